//! The small reference semimatroids shipped in `fixtures/`.

use crate::error::{Error, Result};
use crate::io;
use crate::semimatroid::Semimatroid;

pub const NAMES: [&str; 5] = ["A", "B", "C", "E", "F"];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "A" => include_str!("../fixtures/instanceA.json"),
        "B" => include_str!("../fixtures/instanceB.json"),
        "C" => include_str!("../fixtures/instanceC.json"),
        "E" => include_str!("../fixtures/instanceE.json"),
        "F" => include_str!("../fixtures/instanceF.json"),
        _ => return None,
    })
}

/// Loads instance `name`: A is the boundary of a triangle, B three concurrent
/// lines, C a coloop, E a loop and F two points.
pub fn instance(name: &str) -> Result<Semimatroid> {
    let text = source(name).ok_or_else(|| Error::Argument(format!("no canonical instance {name:?}")))?;
    io::from_str(text)
}

pub fn all() -> Vec<(&'static str, Semimatroid)> {
    NAMES.iter().map(|&n| (n, instance(n).expect("bundled fixtures parse"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for (name, s) in all() {
            assert!(s.check_axioms().is_empty(), "{name}");
        }
        assert!(instance("D").is_err());
    }

    #[test]
    fn tutte_polynomials() {
        let expected = [("A", "x^2 + x + 1"), ("B", "x^2 + x + y"), ("C", "x"), ("E", "y"), ("F", "x + 1")];
        for (name, t) in expected {
            assert_eq!(instance(name).unwrap().tutte_sum().to_string(), t, "{name}");
        }
    }
}
