//! Problem files shipped with the tool.

use crate::problem::ProblemFile;

pub const CATALOG: &[(&str, &str)] = &[
    ("line", include_str!("../catalog/line.json")),
    ("hyperbola", include_str!("../catalog/hyperbola.json")),
    ("cusp", include_str!("../catalog/cusp.json")),
    ("nodal", include_str!("../catalog/nodal.json")),
    ("quadric", include_str!("../catalog/quadric.json")),
    ("umbrella", include_str!("../catalog/umbrella.json")),
    ("point", include_str!("../catalog/point.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn problem(name: &str) -> Option<ProblemFile> {
    source(name).map(|s| ProblemFile::from_json(s).expect("catalog fixtures are valid"))
}
