//! Named bicharacters used by the CLI and the test suites.

use crate::lattice::Bicharacter;
use crate::scalars::{Field, Scalar};

pub const PRESET_NAMES: [&str; 5] = [
    "A1-generic",
    "A1-zeta3",
    "A2-generic",
    "A2-zeta3",
    "B2-preset",
];

fn build(field: Field, q: Vec<Vec<Scalar>>) -> Bicharacter {
    Bicharacter::new(field, q).expect("preset bicharacters are valid")
}

pub fn preset(name: &str) -> Option<Bicharacter> {
    let t = |k| Scalar::t_pow(k);
    let z = |k| Scalar::zeta(3, k);
    let qt = Field::RationalFunction;
    let z3 = Field::Cyclotomic(3);
    Some(match name {
        "A1-generic" => build(qt, vec![vec![t(1)]]),
        "A1-zeta3" => build(z3, vec![vec![z(1)]]),
        "A2-generic" => build(qt, vec![vec![t(2), t(-1)], vec![t(-1), t(2)]]),
        "A2-zeta3" => build(z3, vec![vec![z(1), z(1)], vec![z(1), z(1)]]),
        "B2-preset" => build(qt, vec![vec![t(2), t(-1)], vec![t(-1), t(1)]]),
        _ => return None,
    })
}

/// A rank-2 bicharacter at ζ₃ whose Weyl groupoid has more than one object.
pub fn multi_object_example() -> Bicharacter {
    build(
        Field::Cyclotomic(3),
        vec![
            vec![Scalar::zeta(3, 1), Scalar::zeta(3, 2)],
            vec![Scalar::one(), Scalar::from_int(-1)],
        ],
    )
}
