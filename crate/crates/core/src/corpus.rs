//! Built-in fixtures, constructed from their orders and validated on build.
//!
//! Every member puts bottom at index 0 and top at index `n - 1`.

use crate::lattice::BoundedLattice;
use crate::ortho::OrthoLattice;
use crate::table::{Carrier, Elem, OrderRelation, UnaryOp};

fn build(names: &[&str], leq: impl Fn(Elem, Elem) -> bool, comp: &[Elem]) -> OrthoLattice {
    let carrier = Carrier::new(names.iter().copied()).expect("corpus names are valid");
    let n = carrier.size();
    let order = OrderRelation::from_fn(n, leq).expect("corpus order is a partial order");
    let bounded = BoundedLattice::from_order(carrier, &order).expect("corpus order is a lattice");
    debug_assert_eq!((bounded.bottom(), bounded.top()), (0, n - 1));
    OrthoLattice::new(bounded, UnaryOp::new(n, comp.to_vec()).expect("valid complement"))
        .expect("sizes agree")
}

/// `0 <= everything <= 1`, the middle elements pairwise incomparable.
fn horizontal(names: &[&str], comp: &[Elem]) -> OrthoLattice {
    let top = names.len() - 1;
    build(names, |x, y| x == y || x == 0 || y == top, comp)
}

/// The trivial one-element lattice.
pub fn c1() -> OrthoLattice {
    build(&["0"], |_, _| true, &[0])
}

/// The two-element chain.
pub fn c2() -> OrthoLattice {
    build(&["0", "1"], |x, y| x <= y, &[1, 0])
}

/// The four-element Boolean algebra.
pub fn b4() -> OrthoLattice {
    horizontal(&["0", "a", "a'", "1"], &[3, 2, 1, 0])
}

/// The eight-element Boolean algebra; element `i` is the subset with bitmask `MASKS[i]`.
pub fn b8() -> OrthoLattice {
    const MASKS: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];
    let idx = |mask: usize| MASKS.iter().position(|&m| m == mask).unwrap();
    let comp: Vec<Elem> = MASKS.iter().map(|&m| idx(7 ^ m)).collect();
    build(
        &["0", "a", "b", "c", "c'", "b'", "a'", "1"],
        |x, y| MASKS[x] & !MASKS[y] == 0,
        &comp,
    )
}

/// The six-element Chinese lantern: atoms `a, a', b, b'`.
pub fn mo2() -> OrthoLattice {
    horizontal(&["0", "a", "a'", "b", "b'", "1"], &[5, 2, 1, 4, 3, 0])
}

/// Eight elements: atoms `a, a', b, b', c, c'`.
pub fn mo3() -> OrthoLattice {
    horizontal(
        &["0", "a", "a'", "b", "b'", "c", "c'", "1"],
        &[7, 2, 1, 4, 3, 6, 5, 0],
    )
}

/// The benzene ring: `0 < x < y < 1`, `0 < y' < x' < 1`. An ortholattice
/// that is not orthomodular.
pub fn o6() -> OrthoLattice {
    // 0, x, y, y', x', 1
    let leq = |a: Elem, b: Elem| a == b || a == 0 || b == 5 || (a, b) == (1, 2) || (a, b) == (3, 4);
    build(&["0", "x", "y", "y'", "x'", "1"], leq, &[5, 4, 3, 2, 1, 0])
}

/// The four-element chain with its unique antitone involution. Not complemented.
pub fn chain4() -> OrthoLattice {
    build(&["0", "a", "b", "1"], |x, y| x <= y, &[3, 2, 1, 0])
}

/// Every corpus member with its short name.
pub fn all() -> Vec<(&'static str, OrthoLattice)> {
    vec![
        ("c1", c1()),
        ("c2", c2()),
        ("b4", b4()),
        ("b8", b8()),
        ("mo2", mo2()),
        ("mo3", mo3()),
        ("o6", o6()),
        ("chain4", chain4()),
    ]
}

pub fn by_name(name: &str) -> Option<OrthoLattice> {
    all()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, s)| s)
}

/// Corpus members that are orthomodular.
pub fn orthomodular() -> Vec<(&'static str, OrthoLattice)> {
    all()
        .into_iter()
        .filter(|(n, _)| !matches!(*n, "o6" | "chain4"))
        .collect()
}
