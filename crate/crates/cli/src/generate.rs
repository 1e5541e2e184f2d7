use std::path::Path;

use torell::generators::{
    generalized_bott_fan, hirzebruch, product, projective_space, star_subdivision,
    weighted_projective, BottTowerSpec, GeneratorError,
};
use torell::{validate, Fan, FanDocument};

use crate::pipeline::{read_document, EXIT_INVALID, EXIT_PARSE, EXIT_SPEC};

pub struct GenerateError {
    pub code: i32,
    pub message: String,
}

impl GenerateError {
    fn spec(message: impl Into<String>) -> Self {
        GenerateError {
            code: EXIT_SPEC,
            message: message.into(),
        }
    }
}

impl From<GeneratorError> for GenerateError {
    fn from(e: GeneratorError) -> Self {
        GenerateError::spec(e.to_string())
    }
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, GenerateError> {
    s.trim()
        .parse()
        .map_err(|_| GenerateError::spec(format!("InvalidSpec: bad {what} {s:?}")))
}

fn parse_list(s: &str) -> Result<Vec<i64>, GenerateError> {
    s.split(',').map(|x| parse_int(x, "integer")).collect()
}

fn one_param<'a>(kind: &str, params: &'a [String]) -> Result<&'a str, GenerateError> {
    match params {
        [p] => Ok(p),
        _ => Err(GenerateError::spec(format!(
            "InvalidSpec: {kind} takes exactly one parameter, got {}",
            params.len()
        ))),
    }
}

/// A fan named either by `kind:params` or by a path to a fan document.
pub fn fan_from_expr(expr: &str) -> Result<Fan, GenerateError> {
    if let Some((kind, rest)) = expr.split_once(':') {
        if matches!(kind, "projective" | "weighted" | "hirzebruch" | "bott") {
            return generate(kind, &[rest.to_string()]).map(|(fan, _)| fan);
        }
    }
    let path = Path::new(expr);
    if !path.exists() {
        return Err(GenerateError::spec(format!(
            "InvalidSpec: {expr:?} is neither kind:params nor an existing file"
        )));
    }
    let doc = read_document(path).map_err(|message| GenerateError {
        code: EXIT_PARSE,
        message,
    })?;
    doc.to_fan().map_err(|e| GenerateError {
        code: EXIT_INVALID,
        message: e.to_string(),
    })
}

fn name_of(expr: &str) -> String {
    expr.replace(':', " ")
}

/// Builds the fan for `kind` and a default document name.
pub fn generate(kind: &str, params: &[String]) -> Result<(Fan, String), GenerateError> {
    match kind {
        "projective" => {
            let n: usize = parse_int(one_param(kind, params)?, "dimension")?;
            Ok((projective_space(n)?, format!("CP{n}")))
        }
        "weighted" => {
            let q = parse_list(one_param(kind, params)?)?;
            let name = format!("P({})", q.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            Ok((weighted_projective(&q)?, name))
        }
        "hirzebruch" => {
            let a: i64 = parse_int(one_param(kind, params)?, "twist")?;
            Ok((hirzebruch(a), format!("H{a}")))
        }
        "bott" => {
            let spec: BottTowerSpec = one_param(kind, params)?.parse()?;
            Ok((generalized_bott_fan(&spec)?, format!("bott {}", params[0])))
        }
        "product" => match params {
            [a, b] => {
                let fan = product(&fan_from_expr(a)?, &fan_from_expr(b)?);
                Ok((fan, format!("{} x {}", name_of(a), name_of(b))))
            }
            _ => Err(GenerateError::spec("InvalidSpec: product takes two fan expressions")),
        },
        "stardiv" => {
            let (base, cones) = params
                .split_first()
                .ok_or_else(|| GenerateError::spec("InvalidSpec: stardiv needs a base fan"))?;
            if cones.is_empty() {
                return Err(GenerateError::spec("InvalidSpec: stardiv needs at least one cone"));
            }
            let mut fan = fan_from_expr(base)?;
            for cone in cones {
                let idx: Vec<usize> = cone
                    .split(',')
                    .map(|x| parse_int(x, "ray index"))
                    .collect::<Result<_, _>>()?;
                let vf = validate(fan)
                    .map_err(|e| GenerateError { code: EXIT_INVALID, message: e.to_string() })?;
                fan = star_subdivision(&vf, &idx)?;
            }
            Ok((fan, format!("{} blown up {}x", name_of(base), cones.len())))
        }
        _ => Err(GenerateError::spec(format!(
            "InvalidSpec: unknown kind {kind:?}; expected projective, weighted, product, bott, hirzebruch or stardiv"
        ))),
    }
}

pub fn generate_document(kind: &str, params: &[String]) -> Result<FanDocument, GenerateError> {
    let (fan, name) = generate(kind, params)?;
    Ok(FanDocument::from_fan(&fan, Some(name)))
}
