//! Bundled data files: generator matrices, arrays, schemes, codes and
//! existence facts. Every loader re-verifies what it reads; a fixture that
//! fails its own claims is an error.
//!
//! The directory defaults to `fixtures/` next to this crate's manifest and
//! can be overridden with the `KUNIFORM_FIXTURES` environment variable.

use std::path::PathBuf;

use crate::constructions::{code_to_oa, DifferenceScheme, LinearCodeSpec};
use crate::error::{Error, Result};
use crate::format;
use crate::oa::{verify_strength, ExistenceFacts, OrthogonalArray};
use crate::stabilizer::GeneratorMatrix;

pub const ENV_VAR: &str = "KUNIFORM_FIXTURES";

/// Qubit generator matrices as `(file, N, expected k)`.
pub const QUBIT_GENERATORS: [(&str, usize, usize); 6] = [
    ("qubit_7_4.gen", 7, 4),
    ("qubit_8_4.gen", 8, 4),
    ("qubit_9_4.gen", 9, 4),
    ("qubit_8_5.gen", 8, 5),
    ("qubit_9_5.gen", 9, 5),
    ("qubit_9_6.gen", 9, 6),
];
/// `OA(16,5,2,4)`: binary 4-tuples with a parity bit.
pub const EVEN_WEIGHT: &str = "even_weight_16_5.oa";
/// `OA(8,7,2,2)` whose complement-shift partition gives a 3-uniform 7-qubit mixture.
pub const BINARY_8_7: &str = "binary_8_7.oa";
/// Printed `D_3(16,6,4)`.
pub const DS_16_6_4: &str = "ds_16_6_4.ds";
/// Searched `D_3(18,5,3)`.
pub const DS_18_5_3: &str = "ds_18_5_3.ds";
pub const GOLAY_11: &str = "golay_ternary_11.code";
pub const GOLAY_12: &str = "golay_ternary_12.code";
pub const QR_11: &str = "qr_quaternary_11.code";
pub const QR_12: &str = "qr_quaternary_12.code";
/// `[4,2,3]_4` MDS code.
pub const QUATERNARY_4_2: &str = "quaternary_4_2.code";
pub const FACTS: &str = "facts.txt";

/// Every data file, for round-trip checks.
pub fn all_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = QUBIT_GENERATORS.iter().map(|g| g.0).collect();
    v.extend([
        EVEN_WEIGHT,
        BINARY_8_7,
        DS_16_6_4,
        DS_18_5_3,
        GOLAY_11,
        GOLAY_12,
        QR_11,
        QR_12,
        QUATERNARY_4_2,
        FACTS,
    ]);
    v
}

pub fn dir() -> PathBuf {
    std::env::var_os(ENV_VAR)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")))
}

pub fn read(name: &str) -> Result<String> {
    let path = dir().join(name);
    std::fs::read_to_string(&path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn tag(name: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::Io { .. } | Error::Fixture { .. } => e,
        other => Error::Fixture {
            name: name.to_string(),
            msg: other.to_string(),
        },
    }
}

/// A generator matrix that passes the commuting and independence checks.
pub fn generator(name: &str) -> Result<GeneratorMatrix> {
    let g = format::parse_generator(&read(name)?).map_err(tag(name))?;
    g.validate().map_err(tag(name))?;
    Ok(g)
}

/// An array whose header strength is verified.
pub fn oa(name: &str) -> Result<OrthogonalArray> {
    let a = format::parse_oa(&read(name)?).map_err(tag(name))?;
    if !verify_strength(&a, a.claimed_strength()) {
        return Err(Error::Fixture {
            name: name.into(),
            msg: format!("array lacks its declared strength {}", a.claimed_strength()),
        });
    }
    Ok(a)
}

/// A difference scheme, verified on parse.
pub fn scheme(name: &str) -> Result<DifferenceScheme> {
    format::parse_ds(&read(name)?).map_err(tag(name))
}

pub fn code_spec(name: &str) -> Result<LinearCodeSpec> {
    format::parse_code(&read(name)?).map_err(tag(name))
}

/// The codeword array of a code fixture, with its claims checked.
pub fn code(name: &str) -> Result<OrthogonalArray> {
    code_to_oa(&code_spec(name)?).map_err(tag(name))
}

pub fn facts() -> Result<ExistenceFacts> {
    ExistenceFacts::parse(&read(FACTS)?).map_err(tag(FACTS))
}
