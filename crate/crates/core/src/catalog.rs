//! Bundled reference arcs used by the verifier and the test suite.

use num_traits::One;

use crate::arc::Arc;
use crate::scalar::Rat;

/// The standard catalog over the rationals, at the given precision:
/// a parabola, a parabola with a curved parameter, a deep-tangency curve,
/// a coordinate axis in dimension 3, and the cusp (the one entry that
/// needs a blowup before the nonsingular theory applies).
pub fn standard(precision: usize) -> Vec<(&'static str, Arc<Rat>)> {
    let w = Rat::one();
    let arc = |rows: &[&[i64]]| Arc::from_ints(&w, rows, precision).expect("catalog arcs are valid");
    vec![
        ("parabola", arc(&[&[0, 1], &[0, 0, 1]])),
        ("curved-parameter", arc(&[&[0, 1, 1], &[0, 0, 0, 1]])),
        ("deep-tangency", arc(&[&[0, 1], &[0, 0, 1, 0, 0, 1]])),
        ("axis-3d", arc(&[&[0, 1], &[], &[]])),
        ("cusp", arc(&[&[0, 0, 1], &[0, 0, 0, 1]])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_arcs_are_normalized() {
        for (name, arc) in standard(16) {
            let idx = arc.normalization_index().unwrap();
            assert_eq!(idx.d, 1, "{name} should be normalized");
        }
    }
}
