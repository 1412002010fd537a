//! Isomorphism search and canonical labelings.

use crate::error::{Error, Result};
use crate::table::{Algebra, BinaryOp, Elem, Operation, UnaryOp};

/// A bijection `old index -> new index` preserving every operation and constant
/// of `a` onto `b`, if one exists.
///
/// Constants are pinned first; the remaining elements are matched by
/// backtracking over elements with equal local invariants, with each choice
/// propagated through the tables until a fixpoint.
pub fn are_isomorphic(a: &Algebra, b: &Algebra) -> Result<Option<Vec<Elem>>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    let n = a.size();
    let pairs: Vec<(&Operation, &Operation)> = a
        .ops()
        .iter()
        .map(|(name, op)| (op, b.op(name).expect("signatures agree")))
        .collect();

    let inv_a = invariants(n, a.ops().iter().map(|(_, op)| op));
    let inv_b = invariants(n, pairs.iter().map(|(_, op)| *op));
    let mut sorted_a = inv_a.clone();
    let mut sorted_b = inv_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(None);
    }

    let mut state = Mapping::new(n);
    for (name, ca) in a.constants() {
        let cb = b.constant(name).expect("signatures agree");
        if !state.assign(*ca, cb, &inv_a, &inv_b) {
            return Ok(None);
        }
    }
    if !state.propagate(&pairs, &inv_a, &inv_b) {
        return Ok(None);
    }
    Ok(extend(state, &pairs, &inv_a, &inv_b))
}

#[derive(Clone)]
struct Mapping {
    fwd: Vec<Option<Elem>>,
    bwd: Vec<Option<Elem>>,
    queue: Vec<Elem>,
    mapped: Vec<Elem>,
}

impl Mapping {
    fn new(n: usize) -> Self {
        Mapping {
            fwd: vec![None; n],
            bwd: vec![None; n],
            queue: Vec::new(),
            mapped: Vec::new(),
        }
    }

    fn assign(&mut self, x: Elem, y: Elem, inv_a: &[Vec<usize>], inv_b: &[Vec<usize>]) -> bool {
        match (self.fwd[x], self.bwd[y]) {
            (Some(fx), _) => fx == y,
            (None, Some(_)) => false,
            (None, None) => {
                if inv_a[x] != inv_b[y] {
                    return false;
                }
                self.fwd[x] = Some(y);
                self.bwd[y] = Some(x);
                self.queue.push(x);
                true
            }
        }
    }

    /// Close the partial map under every operation.
    fn propagate(
        &mut self,
        pairs: &[(&Operation, &Operation)],
        inv_a: &[Vec<usize>],
        inv_b: &[Vec<usize>],
    ) -> bool {
        while let Some(x) = self.queue.pop() {
            self.mapped.push(x);
            let fx = self.fwd[x].unwrap();
            for (oa, ob) in pairs {
                match (oa, ob) {
                    (Operation::Unary(ua), Operation::Unary(ub)) => {
                        if !self.assign(ua.get(x), ub.get(fx), inv_a, inv_b) {
                            return false;
                        }
                    }
                    (Operation::Binary(ba), Operation::Binary(bb)) => {
                        for i in 0..self.mapped.len() {
                            let y = self.mapped[i];
                            let fy = self.fwd[y].unwrap();
                            if !self.assign(ba.get(x, y), bb.get(fx, fy), inv_a, inv_b)
                                || !self.assign(ba.get(y, x), bb.get(fy, fx), inv_a, inv_b)
                            {
                                return false;
                            }
                        }
                    }
                    _ => unreachable!("signatures agree"),
                }
            }
        }
        true
    }
}

fn extend(
    state: Mapping,
    pairs: &[(&Operation, &Operation)],
    inv_a: &[Vec<usize>],
    inv_b: &[Vec<usize>],
) -> Option<Vec<Elem>> {
    let Some(x) = state.fwd.iter().position(Option::is_none) else {
        return Some(state.fwd.into_iter().map(Option::unwrap).collect());
    };
    for y in 0..state.bwd.len() {
        if state.bwd[y].is_some() || inv_a[x] != inv_b[y] {
            continue;
        }
        let mut next = state.clone();
        if next.assign(x, y, inv_a, inv_b) && next.propagate(pairs, inv_a, inv_b) {
            if let Some(found) = extend(next, pairs, inv_a, inv_b) {
                return Some(found);
            }
        }
    }
    None
}

/// Isomorphism-invariant counts per element.
fn invariants<'a>(n: usize, ops: impl Iterator<Item = &'a Operation>) -> Vec<Vec<usize>> {
    let mut inv = vec![Vec::new(); n];
    for op in ops {
        match op {
            Operation::Binary(b) => {
                let mut image = vec![0; n];
                let mut left_fixed = vec![0; n];
                for x in 0..n {
                    for y in 0..n {
                        let v = b.get(x, y);
                        image[v] += 1;
                        if v == x {
                            left_fixed[x] += 1;
                        }
                    }
                }
                for x in 0..n {
                    inv[x].extend([image[x], left_fixed[x], (b.get(x, x) == x) as usize]);
                }
            }
            Operation::Unary(u) => {
                let mut pre = vec![0; n];
                for x in 0..n {
                    pre[u.get(x)] += 1;
                }
                for x in 0..n {
                    inv[x].extend([pre[x], (u.get(x) == x) as usize]);
                }
            }
        }
    }
    inv
}

/// Lexicographically minimal encoding of the concatenated tables over every
/// relabeling that sends `bottom` to 0 and `top` to `n - 1`.
///
/// Returns the code and the permutation (old index to new index) realising it.
pub fn canonical_labeling(
    binary: &[&BinaryOp],
    unary: &[&UnaryOp],
    bottom: Elem,
    top: Elem,
) -> (Vec<u8>, Vec<Elem>) {
    let n = binary
        .first()
        .map(|b| b.size())
        .or_else(|| unary.first().map(|u| u.size()))
        .expect("at least one table");
    let middle: Vec<Elem> = (0..n).filter(|&e| e != bottom && e != top).collect();
    let m = middle.len();
    let code_len = binary.len() * n * n + unary.len() * n;

    // q: new index -> old element; p: old element -> new index
    let mut q = vec![0; n];
    let mut p = vec![0; n];
    q[0] = bottom;
    q[n - 1] = top;
    let mut best: Vec<u8> = Vec::new();
    let mut best_perm: Vec<Elem> = Vec::new();
    let mut scratch: Vec<u8> = Vec::with_capacity(code_len);

    let mut visit = |order: &[Elem]| {
        if n > 1 {
            q[1..n - 1].copy_from_slice(order);
        }
        for (new, &old) in q.iter().enumerate() {
            p[old] = new;
        }
        if compare_and_record(binary, unary, n, &q, &p, &mut best, &mut scratch) {
            best_perm = p.clone();
        }
    };

    // Heap's algorithm over the middle elements
    let mut order = middle;
    let mut c = vec![0usize; m];
    visit(&order);
    let mut i = 1;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            visit(&order);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    (best, best_perm)
}

/// Encode under (q, p) with early abort; returns true if it improved `best`.
fn compare_and_record(
    binary: &[&BinaryOp],
    unary: &[&UnaryOp],
    n: usize,
    q: &[Elem],
    p: &[Elem],
    best: &mut Vec<u8>,
    scratch: &mut Vec<u8>,
) -> bool {
    scratch.clear();
    let mut equal_so_far = !best.is_empty();
    let mut k = 0;
    let mut push = |v: u8, scratch: &mut Vec<u8>| -> bool {
        if equal_so_far {
            let b = best[k];
            if v > b {
                return false;
            }
            if v < b {
                equal_so_far = false;
            }
        }
        scratch.push(v);
        k += 1;
        true
    };
    for t in binary {
        for i in 0..n {
            for j in 0..n {
                if !push(p[t.get(q[i], q[j])] as u8, scratch) {
                    return false;
                }
            }
        }
    }
    for u in unary {
        for i in 0..n {
            if !push(p[u.get(q[i])] as u8, scratch) {
                return false;
            }
        }
    }
    if equal_so_far {
        // identical to the current best
        return false;
    }
    std::mem::swap(best, scratch);
    true
}
