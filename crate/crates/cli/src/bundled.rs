//! Instances shipped with the binary.

pub const BUNDLED: &[(&str, &str)] = &[
    ("k3_loops", include_str!("../instances/k3_loops.json")),
    ("p3_tree", include_str!("../instances/p3_tree.json")),
    ("star_loop", include_str!("../instances/star_loop.json")),
    ("k4", include_str!("../instances/k4.json")),
    ("c5", include_str!("../instances/c5.json")),
];

pub const SCHEMA: &str = include_str!("../instances/instance.schema.json");

/// Looks up a bundled instance by name, with or without a `.json` suffix.
pub fn bundled(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED.iter().find(|(n, _)| *n == stem).map(|(_, text)| *text)
}

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use qwalk_core::check_unitary_condition;

    #[test]
    fn every_bundled_instance_parses_and_is_unitary() {
        for (name, text) in BUNDLED {
            let inst = parse_instance(text, name).unwrap();
            assert_eq!(inst.name, *name);
            assert!(check_unitary_condition(&inst.graph, &inst.weights).unwrap().pass, "{name}");
        }
    }

    #[test]
    fn schema_is_json() {
        let v: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
        assert_eq!(v["required"][0], "graph");
    }

    #[test]
    fn lookup() {
        assert!(bundled("k3_loops.json").is_some());
        assert!(bundled("nope").is_none());
    }
}
