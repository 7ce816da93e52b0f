//! Proof scripts shipped with the crate.

use super::proof::ProofFile;

const SOURCES: [(&str, &str); 6] = [
    ("l1_instance", include_str!("../../scripts/l1_instance.json")),
    ("monotonicity", include_str!("../../scripts/monotonicity.json")),
    ("dwc0", include_str!("../../scripts/dwc0.json")),
    ("dwc2_from_c_l4", include_str!("../../scripts/dwc2_from_c_l4.json")),
    ("c_from_dwc2", include_str!("../../scripts/c_from_dwc2.json")),
    ("l4_from_dwc2", include_str!("../../scripts/l4_from_dwc2.json")),
];

/// The bundled scripts by name, in a fixed order.
pub fn bundled() -> Vec<(&'static str, ProofFile)> {
    SOURCES
        .iter()
        .map(|&(name, text)| {
            let file = ProofFile::from_json(text).unwrap_or_else(|e| panic!("script {name}: {e}"));
            (name, file)
        })
        .collect()
}
