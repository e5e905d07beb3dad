//! The JSON generator schema and its validation.
//!
//! Input shape: `{"generators":[{"b":6,"y":[["1",0],["-2",3]]}, ...]}` where
//! `y` lists `[coefficient, exponent]` pairs. Coefficients are decimal
//! integer strings (a Unicode minus is accepted); exponents are signed
//! integers. An empty generator list is rejected.

use num_bigint::BigInt;
use serde::Deserialize;
use thiserror::Error;
use wreath_core::polyring::{LaurentPoly, Rat};
use wreath_core::wreath::{GeneratorSet, WreathElem};

/// Why an input file was rejected.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("generator {index}: {reason}")]
    Generator { index: usize, reason: String },
    #[error("input needs at least one generator")]
    Empty,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorsFile {
    generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorSpec {
    b: i64,
    y: Vec<(String, i64)>,
}

/// Parses and validates the generator schema into a classified set.
pub fn parse_generators(text: &str) -> Result<GeneratorSet, InputError> {
    let file: GeneratorsFile = serde_json::from_str(text)?;
    if file.generators.is_empty() {
        return Err(InputError::Empty);
    }
    let mut elems = Vec::with_capacity(file.generators.len());
    for (index, spec) in file.generators.iter().enumerate() {
        let mut terms = Vec::with_capacity(spec.y.len());
        for (coefficient, exponent) in &spec.y {
            let c = parse_integer(coefficient)
                .map_err(|reason| InputError::Generator { index, reason })?;
            terms.push((*exponent, Rat::from_integer(c)));
        }
        elems.push(WreathElem::from_poly(
            LaurentPoly::from_terms(terms),
            spec.b,
        ));
    }
    Ok(GeneratorSet::new(elems))
}

fn parse_integer(text: &str) -> Result<BigInt, String> {
    let normalized = text.trim().replace('\u{2212}', "-");
    normalized
        .parse::<BigInt>()
        .map_err(|_| format!("coefficient {text:?} is not an integer"))
}
