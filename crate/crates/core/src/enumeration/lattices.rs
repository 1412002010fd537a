//! Isomorphism-free generation of bounded lattices and their orthocomplementations.
//!
//! Lattices of size `n` are built from naturally labelled posets on the
//! `n - 2` middle elements (every element is added above a down-set of the
//! earlier ones), closed off with a bottom and a top, and kept if every pair
//! has a least upper bound. Survivors are canonicalized and deduplicated.

use rayon::prelude::*;

use crate::iso::canonical_labeling;
use crate::lattice::BoundedLattice;
use crate::ortho::{is_orthomodular, OrthoLattice};
use crate::table::{letter_label, BinaryOp, Carrier, Elem, UnaryOp};

/// Largest carrier the bitmask representation supports.
pub const MAX_SIZE: usize = 16;

/// Naturally labelled posets on `m` elements: `below[k]` is the set of
/// elements strictly below `k`, a down-set of `0..k`.
pub(crate) fn natural_posets(m: usize) -> Vec<Vec<u16>> {
    fn grow(k: usize, m: usize, below: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k == m {
            out.push(below.clone());
            return;
        }
        for mask in 0u16..(1u16 << k) {
            let closed = (0..k).all(|i| mask & (1 << i) == 0 || below[i] & !mask == 0);
            if closed {
                below.push(mask);
                grow(k + 1, m, below, out);
                below.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(0, m, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Join and meet tables of the poset `bottom < middle < top`, if it is a lattice.
fn lattice_tables(below: &[u16]) -> Option<(BinaryOp, BinaryOp)> {
    let m = below.len();
    let n = m + 2;
    let top = n - 1;
    // up[x] / down[x]: elements >= x / <= x, over full indices
    let mut up = vec![0u32; n];
    let mut down = vec![0u32; n];
    down[0] = 1;
    up[top] = 1 << top;
    for k in 0..m {
        let x = k + 1;
        down[x] = 1 | (1 << x) | ((below[k] as u32) << 1);
    }
    down[top] = (1u32 << n) - 1;
    for x in 0..n {
        for y in 0..n {
            if down[y] & (1 << x) != 0 {
                up[x] |= 1 << y;
            }
        }
    }
    let bound = |sets: &[u32], x: usize, y: usize| -> Option<Elem> {
        let common = sets[x] & sets[y];
        let mut bits = common;
        while bits != 0 {
            let z = bits.trailing_zeros() as usize;
            if sets[z] == common {
                return Some(z);
            }
            bits &= bits - 1;
        }
        None
    };
    let mut join = Vec::with_capacity(n * n);
    let mut meet = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            join.push(bound(&up, x, y)?);
            meet.push(bound(&down, x, y)?);
        }
    }
    Some((
        BinaryOp::from_flat(n, join).ok()?,
        BinaryOp::from_flat(n, meet).ok()?,
    ))
}

/// One representative per isomorphism class of `n`-element bounded lattices,
/// in canonical labeling, sorted by canonical code.
pub fn lattices_of_size(n: usize) -> Vec<(Vec<u8>, BoundedLattice)> {
    assert!((1..=MAX_SIZE).contains(&n), "lattice size out of range");
    if n == 1 {
        let t = BinaryOp::from_fn(1, |_, _| 0);
        let (code, _) = canonical_labeling(&[&t, &t], &[], 0, 0);
        let l = BoundedLattice::new(Carrier::bounded_labels(1), t.clone(), t, 0, 0)
            .expect("trivial lattice");
        return vec![(code, l)];
    }
    let posets = natural_posets(n - 2);
    let mut found: Vec<(Vec<u8>, BinaryOp, BinaryOp)> = posets
        .par_iter()
        .filter_map(|below| {
            let (join, meet) = lattice_tables(below)?;
            let (code, perm) = canonical_labeling(&[&join, &meet], &[], 0, n - 1);
            Some((code, join.relabeled(&perm), meet.relabeled(&perm)))
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    found
        .into_iter()
        .map(|(code, join, meet)| {
            let l = BoundedLattice::new(Carrier::bounded_labels(n), join, meet, 0, n - 1)
                .expect("generated tables are consistent");
            (code, l)
        })
        .collect()
}

/// Every orthocomplementation of `l`: involutions with `x ∧ x' = 0`,
/// `x ∨ x' = 1` that reverse the order.
pub fn orthocomplementations(l: &BoundedLattice) -> Vec<UnaryOp> {
    let n = l.size();
    let (bot, top) = (l.bottom(), l.top());
    if n == 1 {
        return vec![UnaryOp::identity(1)];
    }
    if n % 2 == 1 {
        return Vec::new();
    }
    let complements: Vec<Vec<Elem>> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y != x && l.meet().get(x, y) == bot && l.join().get(x, y) == top)
                .collect()
        })
        .collect();
    // every middle element needs a complement partner
    if (0..n).any(|x| x != bot && x != top && complements[x].is_empty()) {
        return Vec::new();
    }

    fn assign(
        l: &BoundedLattice,
        complements: &[Vec<Elem>],
        comp: &mut Vec<Option<Elem>>,
        out: &mut Vec<UnaryOp>,
    ) {
        let n = comp.len();
        let Some(x) = comp.iter().position(Option::is_none) else {
            out.push(UnaryOp::from_fn(n, |e| comp[e].unwrap()));
            return;
        };
        for &y in &complements[x] {
            if comp[y].is_some() {
                continue;
            }
            comp[x] = Some(y);
            comp[y] = Some(x);
            let antitone = [x, y].iter().all(|&a| {
                (0..n).all(|u| match comp[u] {
                    None => true,
                    Some(cu) => {
                        let ca = comp[a].unwrap();
                        (!l.leq(a, u) || l.leq(cu, ca)) && (!l.leq(u, a) || l.leq(ca, cu))
                    }
                })
            });
            if antitone {
                assign(l, complements, comp, out);
            }
            comp[x] = None;
            comp[y] = None;
        }
    }

    let mut comp = vec![None; n];
    comp[bot] = Some(top);
    comp[top] = Some(bot);
    let mut out = Vec::new();
    assign(l, &complements, &mut comp, &mut out);
    out
}

/// Names middle elements in index order as `a, a', b, b', ...`, pairing each
/// with its complement.
pub(crate) fn complement_pair_labels(comp: &UnaryOp) -> Carrier {
    let n = comp.size();
    let mut names: Vec<Option<String>> = vec![None; n];
    names[0] = Some("0".into());
    names[n - 1] = Some("1".into());
    let mut next = 0;
    for x in 1..n.saturating_sub(1) {
        if names[x].is_none() {
            let base = letter_label(next);
            next += 1;
            let cx = comp.get(x);
            if cx != x && names[cx].is_none() {
                names[cx] = Some(format!("{base}'"));
            }
            names[x] = Some(base);
        }
    }
    Carrier::new(names.into_iter().map(Option::unwrap)).expect("generated names are distinct")
}

/// One representative per isomorphism class of `n`-element ortholattices
/// (orthomodular ones only if asked), canonically labelled and sorted by code.
///
/// Labelled lattices without any orthocomplementation are dropped before
/// canonicalization, which is where almost all of the work would go.
pub fn ortholattices_of_size(n: usize, orthomodular_only: bool) -> Vec<(Vec<u8>, OrthoLattice)> {
    assert!((1..=MAX_SIZE).contains(&n), "lattice size out of range");
    if n > 1 && n % 2 == 1 {
        return Vec::new();
    }
    let labelled: Vec<BoundedLattice> = if n == 1 {
        lattices_of_size(1).into_iter().map(|(_, l)| l).collect()
    } else {
        natural_posets(n - 2)
            .par_iter()
            .filter_map(|below| {
                let (join, meet) = lattice_tables(below)?;
                BoundedLattice::new(Carrier::bounded_labels(n), join, meet, 0, n - 1).ok()
            })
            .collect()
    };
    let mut found: Vec<(Vec<u8>, OrthoLattice)> = labelled
        .par_iter()
        .flat_map_iter(|l| {
            orthocomplementations(l)
                .into_iter()
                .filter_map(|comp| {
                    let ol = OrthoLattice::new(l.clone(), comp).expect("sizes agree");
                    if orthomodular_only && !is_orthomodular(&ol) {
                        return None;
                    }
                    let (code, perm) = canonical_labeling(
                        &[ol.join(), ol.meet()],
                        &[ol.complement()],
                        0,
                        n - 1,
                    );
                    Some((code, ol.relabeled(&perm)))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    found.dedup_by(|a, b| a.0 == b.0);
    found
        .into_iter()
        .map(|(code, ol)| {
            let names = complement_pair_labels(ol.complement());
            (code, ol.with_carrier(names).expect("same size"))
        })
        .collect()
}
