//! Standard example groups. The same definitions ship as JSON files under
//! `fixtures/` at the workspace root.

use crate::perm::Perm;
use crate::ssgroup::{SSPresentation, WreathRecursion};
use crate::tree::Degree;
use crate::word::GroupWord;

/// Builds a presentation from `(name, perm images, state words)` triples
/// and relator strings.
pub fn build(degree: usize, gens: &[(&str, &[u32], &[&str])], relators: &[&str]) -> SSPresentation {
    let degree = Degree::new(degree).expect("degree");
    let names: Vec<String> = gens.iter().map(|(n, _, _)| n.to_string()).collect();
    let bare = SSPresentation::new(
        degree,
        names.clone(),
        gens.iter()
            .map(|(_, p, _)| WreathRecursion {
                perm: Perm::from_images(p.to_vec()).expect("perm"),
                states: vec![GroupWord::identity(); degree.get()],
            })
            .collect(),
        Vec::new(),
    )
    .expect("presentation");
    let recursions = gens
        .iter()
        .map(|(_, p, states)| WreathRecursion {
            perm: Perm::from_images(p.to_vec()).expect("perm"),
            states: states.iter().map(|s| bare.parse_word(s).expect("state word")).collect(),
        })
        .collect();
    let relators = relators.iter().map(|r| bare.parse_word(r).expect("relator")).collect();
    SSPresentation::new(degree, names, recursions, relators).expect("presentation")
}

/// The binary adding machine `a ↔ (1 2)(1, a)`.
pub fn odometer() -> SSPresentation {
    build(2, &[("a", &[2, 1], &["", "a"])], &[])
}

/// The first Grigorchuk group.
pub fn grigorchuk() -> SSPresentation {
    build(
        2,
        &[
            ("a", &[2, 1], &["", ""]),
            ("b", &[1, 2], &["a", "c"]),
            ("c", &[1, 2], &["a", "d"]),
            ("d", &[1, 2], &["", "b"]),
        ],
        &["a a", "b b", "c c", "d d", "b c d", "a d a d a d a d"],
    )
}

/// The infinite dihedral group as `x ↦ x + 1`, `x ↦ -x` on the binary tree.
pub fn dinf() -> SSPresentation {
    build(2, &[("a", &[2, 1], &["", "a"]), ("s", &[1, 2], &["s", "a^-1 s"])], &["s s", "s a s a"])
}

/// A mirrored odometer `a ↔ (1 2)(a, 1)`; disagrees with the affine model.
pub fn odometer_mirrored() -> SSPresentation {
    build(2, &[("a", &[2, 1], &["a", ""])], &[])
}
