//! Small named complexes used throughout tests, benchmarks, and docs.
//!
//! | name      | vertices                                   | maximal simplices      | base |
//! |-----------|--------------------------------------------|------------------------|------|
//! | `hollow3` | A=(0,0) B=(1,0) C=(0,1)                    | AB, BC, CA             | A    |
//! | `filled3` | as `hollow3`                               | ABC                    | A    |
//! | `line`    | P=(0) Q=(3)                                | PQ                     | P    |
//! | `rt345`   | A=(0,0) B=(3,0) C=(3,4)                    | AB, BC, CA             | A    |
//! | `square4` | A=(0,0) B=(1,0) C=(1,1) D=(0,1)            | ABC, CD, DA            | A    |

use std::sync::Arc;

use crate::geometry::{build_complex, ComplexSpec, Point, SimplicialComplex};

fn make(vertices: &[(&str, &[i64])], simplices: &[&[&str]], base: &str) -> SimplicialComplex {
    let spec = ComplexSpec {
        ambient_dim: vertices[0].1.len(),
        vertices: vertices
            .iter()
            .map(|(id, c)| (id.to_string(), Point::from_ints(c)))
            .collect(),
        simplices: simplices
            .iter()
            .map(|s| s.iter().map(|v| v.to_string()).collect())
            .collect(),
        basepoint: base.to_string(),
    };
    build_complex(&spec).expect("fixture complex is valid")
}

pub fn hollow3() -> SimplicialComplex {
    make(
        &[("A", &[0, 0]), ("B", &[1, 0]), ("C", &[0, 1])],
        &[&["A", "B"], &["B", "C"], &["C", "A"]],
        "A",
    )
}

pub fn filled3() -> SimplicialComplex {
    make(
        &[("A", &[0, 0]), ("B", &[1, 0]), ("C", &[0, 1])],
        &[&["A", "B", "C"]],
        "A",
    )
}

pub fn line() -> SimplicialComplex {
    make(&[("P", &[0]), ("Q", &[3])], &[&["P", "Q"]], "P")
}

pub fn rt345() -> SimplicialComplex {
    make(
        &[("A", &[0, 0]), ("B", &[3, 0]), ("C", &[3, 4])],
        &[&["A", "B"], &["B", "C"], &["C", "A"]],
        "A",
    )
}

pub fn square4() -> SimplicialComplex {
    make(
        &[
            ("A", &[0, 0]),
            ("B", &[1, 0]),
            ("C", &[1, 1]),
            ("D", &[0, 1]),
        ],
        &[&["A", "B", "C"], &["C", "D"], &["D", "A"]],
        "A",
    )
}

/// Every fixture, shared, with its name.
pub fn all() -> Vec<(&'static str, Arc<SimplicialComplex>)> {
    vec![
        ("hollow3", Arc::new(hollow3())),
        ("filled3", Arc::new(filled3())),
        ("line", Arc::new(line())),
        ("rt345", Arc::new(rt345())),
        ("square4", Arc::new(square4())),
    ]
}

pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    Some(match name {
        "hollow3" => hollow3(),
        "filled3" => filled3(),
        "line" => line(),
        "rt345" => rt345(),
        "square4" => square4(),
        _ => return None,
    })
}
