use std::path::Path;

use torell::{
    betti_numbers, classify, quotient_presentation, rational_homotopy_degrees, validate,
    validation_report, ComplexError, FanDocument, ValidationReport,
};

use crate::report::{
    ClassificationReport, ClassificationSection, DegreesSection, QuotientSection, ValidationSection,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_SPEC: i32 = 4;

/// A finished report plus the exit code it implies.
pub struct Outcome {
    pub report: Option<ClassificationReport>,
    pub diagnostic: Option<String>,
    pub code: i32,
}

impl Outcome {
    fn failed(code: i32, msg: String) -> Self {
        Outcome {
            report: None,
            diagnostic: Some(msg),
            code,
        }
    }
}

pub fn read_document(path: &Path) -> Result<FanDocument, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    FanDocument::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn skeleton(doc: &FanDocument, validation: &ValidationReport) -> ClassificationReport {
    ClassificationReport {
        name: doc.name.clone(),
        dim: doc.dim,
        n_rays: doc.rays.len(),
        n_max_cones: doc.max_cones.len(),
        validation: ValidationSection::from(validation),
        classification: None,
        quotient: None,
        betti: None,
        homotopy_degrees: None,
    }
}

pub fn validate_document(doc: &FanDocument) -> Outcome {
    let validation = match doc.to_fan() {
        Ok(fan) => validation_report(&fan),
        Err(e) => ValidationReport::structural_failure(&e),
    };
    let code = if validation.is_ok() {
        EXIT_OK
    } else {
        EXIT_INVALID
    };
    Outcome {
        report: Some(skeleton(doc, &validation)),
        diagnostic: validation.failures.first().cloned(),
        code,
    }
}

pub fn classify_document(doc: &FanDocument) -> Outcome {
    let fan = match doc.to_fan() {
        Ok(fan) => fan,
        Err(e) => {
            let validation = ValidationReport::structural_failure(&e);
            return Outcome {
                report: Some(skeleton(doc, &validation)),
                diagnostic: Some(e.to_string()),
                code: EXIT_INVALID,
            };
        }
    };
    let validation = validation_report(&fan);
    let mut report = skeleton(doc, &validation);
    let vf = match validate(fan) {
        Ok(vf) => vf,
        Err(e) => {
            return Outcome {
                report: Some(report),
                diagnostic: Some(e.to_string()),
                code: EXIT_INVALID,
            }
        }
    };
    if vf.is_complete() {
        report.betti = betti_numbers(&vf).ok();
    }
    let classification = match classify(&vf) {
        Ok(c) => c,
        Err(ComplexError::PreconditionFailed(msg)) => {
            return Outcome {
                report: Some(report),
                diagnostic: Some(msg),
                code: EXIT_PRECONDITION,
            }
        }
        Err(e) => return Outcome::failed(EXIT_INVALID, e.to_string()),
    };
    if classification.elliptic {
        match quotient_presentation(&vf) {
            Ok(q) => report.quotient = Some(QuotientSection::from(&q)),
            Err(e) => return Outcome::failed(EXIT_PRECONDITION, e.to_string()),
        }
        if let Ok(d) = rational_homotopy_degrees(&classification) {
            report.homotopy_degrees = Some(DegreesSection::from(&d));
        }
    }
    report.classification = Some(ClassificationSection::from(&classification));
    Outcome {
        report: Some(report),
        diagnostic: None,
        code: EXIT_OK,
    }
}

pub fn classify_path(path: &Path) -> Outcome {
    match read_document(path) {
        Ok(doc) => classify_document(&doc),
        Err(msg) => Outcome::failed(EXIT_PARSE, msg),
    }
}
