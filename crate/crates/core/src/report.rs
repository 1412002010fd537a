//! Per-axiom pass/fail reports with concrete witnesses.

use std::fmt;

use crate::table::{Carrier, Elem};

/// Outcome of one named axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub id: String,
    /// First violating tuple in lexicographic index order, `None` on success.
    pub witness: Option<Vec<Elem>>,
    /// For composite axioms: which sub-axiom produced the witness.
    pub detail: Option<String>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    names: Vec<String>,
    results: Vec<AxiomResult>,
}

impl CheckReport {
    pub fn new(carrier: &Carrier) -> Self {
        CheckReport {
            names: carrier.names().to_vec(),
            results: Vec::new(),
        }
    }

    /// Sweep `[0, n)^K` in lexicographic order and record the first tuple where
    /// `holds` is false.
    pub fn check<const K: usize>(&mut self, id: &str, holds: impl Fn([Elem; K]) -> bool) {
        let witness = first_violation(self.names.len(), holds).map(|w| w.to_vec());
        self.push(AxiomResult {
            id: id.to_owned(),
            witness,
            detail: None,
        });
    }

    pub fn push(&mut self, result: AxiomResult) {
        self.results.push(result);
    }

    /// Record a single entry summarising `sub`: it passes iff every entry of
    /// `sub` passes, otherwise it carries the first failing entry's witness.
    pub fn record_composite(&mut self, id: &str, sub: &CheckReport) {
        let failure = sub.results.iter().find(|r| !r.passed());
        self.push(AxiomResult {
            id: id.to_owned(),
            witness: failure.and_then(|r| r.witness.clone()),
            detail: failure.map(|r| match &r.detail {
                Some(d) => format!("{}: {}", r.id, d),
                None => r.id.clone(),
            }),
        });
    }

    /// Append every entry of `other`, prefixing its ids.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut r in other.results {
            r.id = format!("{prefix}{}", r.id);
            self.results.push(r);
        }
    }

    /// The same report with every id prefixed.
    pub fn with_prefix(mut self, prefix: &str) -> CheckReport {
        for r in &mut self.results {
            r.id = format!("{prefix}{}", r.id);
        }
        self
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.results.extend(other.results);
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(AxiomResult::passed)
    }

    pub fn results(&self) -> &[AxiomResult] {
        &self.results
    }

    pub fn get(&self, id: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn first_failure(&self) -> Option<&AxiomResult> {
        self.failures().next()
    }

    /// Witness of axiom `id`, rendered with element names.
    pub fn witness_names(&self, id: &str) -> Option<Vec<&str>> {
        let w = self.get(id)?.witness.as_ref()?;
        Some(w.iter().map(|&e| self.names[e].as_str()).collect())
    }

    fn render_witness(&self, w: &[Elem]) -> String {
        let names: Vec<&str> = w.iter().map(|&e| self.names[e].as_str()).collect();
        format!("({})", names.join(", "))
    }

    /// `axiom_id<TAB>PASS|FAIL<TAB>witness`, one line per axiom.
    pub fn render_terse(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let (status, witness) = match &r.witness {
                None => ("PASS", String::new()),
                Some(w) => (
                    "FAIL",
                    w.iter()
                        .map(|&e| self.names[e].as_str())
                        .collect::<Vec<_>>()
                        .join(","),
                ),
            };
            out.push_str(&format!("{}\t{}\t{}\n", r.id, status, witness));
        }
        out
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.witness {
                None => writeln!(f, "PASS  {}", r.id)?,
                Some(w) => {
                    write!(f, "FAIL  {}  witness {}", r.id, self.render_witness(w))?;
                    if let Some(d) = &r.detail {
                        write!(f, "  [{d}]")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

/// First tuple of `[0, n)^K` in lexicographic order where `holds` fails.
pub(crate) fn first_violation<const K: usize>(
    n: usize,
    holds: impl Fn([Elem; K]) -> bool,
) -> Option<[Elem; K]> {
    let mut t = [0; K];
    loop {
        if !holds(t) {
            return Some(t);
        }
        // odometer increment, last coordinate fastest
        let mut i = K;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}
