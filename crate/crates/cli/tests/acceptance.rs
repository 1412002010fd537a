//! Acceptance criteria, one PASS/FAIL line each. Populations come from the
//! command line where the criterion names a command, so the sweep covers
//! exactly what the tool emits.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use orthokit::coupled::{
    check_coupled_right_orthosemiring, check_coupled_semiring, construct_l, construct_n,
    coupled_sub_reports, sasaki_triple, verify_roundtrip_l, verify_roundtrip_n,
};
use orthokit::enumeration::{count_by_size, lattices_of_size, EnumerationTask, StructureClass};
use orthokit::format::{parse, serialize_algebra};
use orthokit::mv::{
    build_mv_coupled_semiring, check_basic_algebra, check_mv_algebra, derive_odot,
    derive_order_and_lattice, lukasiewicz_chain,
};
use orthokit::ortho::{
    check_commutation_lemma, check_foulis_holland, check_orthomodular, is_orthomodular,
};
use orthokit::{corpus, Error, OrthoLattice};
use orthokit_cli::run;

const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const MV_LIMIT: Duration = Duration::from_secs(10);

// Computed by the oracle and the enumerator on first run, not taken from
// any published table.
const LATTICE_CLASSES: [usize; 8] = [1, 1, 1, 2, 5, 15, 53, 222];
const ORTHOLATTICE_CLASSES: [usize; 10] = [1, 1, 0, 1, 0, 2, 0, 5, 0, 15];
const ORTHOMODULAR_CLASSES: [usize; 10] = [1, 1, 0, 1, 0, 1, 0, 2, 0, 2];

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["orthokit"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    out.extend_from_slice(&err);
    (code, out)
}

/// The OMLs printed by `enumerate --class oml --max-size 8`.
fn emitted_omls() -> Vec<OrthoLattice> {
    let (code, out) = cli(&["enumerate", "--class", "oml", "--max-size", "8"]);
    assert_eq!(code, 0);
    let doc = parse(std::str::from_utf8(&out).unwrap()).unwrap();
    let all: Vec<OrthoLattice> = doc
        .algebras()
        .map(|a| OrthoLattice::from_algebra(a).unwrap())
        .collect();
    assert_eq!(all.len(), ORTHOMODULAR_CLASSES[..8].iter().sum::<usize>());
    assert!(all.iter().all(is_orthomodular));
    all
}

fn coupled_axiom_sweep() {
    let start = Instant::now();
    for l in emitted_omls() {
        let t = construct_n(&l).unwrap();
        let r = check_coupled_right_orthosemiring(&t).unwrap();
        assert!(r.passed(), "{r}");
    }
    assert!(start.elapsed() < SWEEP_LIMIT);
}

fn roundtrip_l_sweep() {
    for l in emitted_omls() {
        let r = verify_roundtrip_l(&l).unwrap();
        assert!(r.passed(), "{r}");
    }
}

fn construct_l_sweep() {
    for l in emitted_omls() {
        let t = construct_n(&l).unwrap();
        let back = construct_l(&t).unwrap();
        assert!(check_orthomodular(&back).unwrap().passed());
        let r = verify_roundtrip_n(&t).unwrap();
        assert!(r.passed(), "{r}");
    }
}

fn negative_controls() {
    let o6 = corpus::o6();
    let r = check_orthomodular(&o6).unwrap();
    assert!(!r.passed());
    assert_eq!(r.witness_names("orthomodular-law").unwrap(), ["x", "y"]);
    assert!(matches!(construct_n(&o6), Err(Error::NotOrthomodular(_))));
    let b = coupled_sub_reports(&sasaki_triple(&o6)).unwrap();
    assert!(!b.r6.passed());
    assert!(b.r6.first_failure().is_some());
}

fn commutation_suite() {
    for l in emitted_omls() {
        let r = check_commutation_lemma(&l).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_foulis_holland(&l).unwrap();
        assert!(r.passed(), "{r}");
    }
}

fn mv_suite() {
    let start = Instant::now();
    for k in 2..=6 {
        let a = lukasiewicz_chain(k).unwrap();
        assert!(check_mv_algebra(&a).passed());
        assert!(check_basic_algebra(&a).passed());
        // elements are numerators 0..k-1 in increasing order
        let d = derive_order_and_lattice(&a).unwrap();
        let odot = derive_odot(&a);
        for x in 0..k {
            for y in 0..k {
                assert_eq!(d.order.leq(x, y), x <= y);
                assert_eq!(d.join.get(x, y), x.max(y));
                assert_eq!(d.meet.get(x, y), x.min(y));
                assert_eq!(odot.get(x, y), (x + y).saturating_sub(k - 1));
            }
        }
        let t = build_mv_coupled_semiring(&a).unwrap();
        let r = check_coupled_semiring(&t).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.get("coupling-law").unwrap().passed());
    }
    assert!(start.elapsed() < MV_LIMIT);
}

fn boolean_degeneration() {
    for l in [corpus::b4(), corpus::b8()] {
        let t = construct_n(&l).unwrap();
        assert_eq!(t.first().times(), l.meet());
        assert_eq!(t.second().times(), l.join());
    }
}

// ---- brute-force lattice oracle ----

type Table = Vec<Vec<usize>>;

fn semilattices(n: usize) -> Vec<Table> {
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .collect();
    let total = n.pow(cells.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut t: Table = (0..n).map(|x| vec![x; n]).collect();
        for &(x, y) in &cells {
            t[x][y] = code % n;
            t[y][x] = code % n;
            code /= n;
        }
        let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x][y]][z] == t[x][t[y][z]])));
        if assoc {
            out.push(t);
        }
    }
    out
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(j, k - 1);
    }
}

fn oracle_code(j: &Table, m: &Table) -> Vec<u8> {
    let n = j.len();
    let bottom = (0..n).find(|&b| (0..n).all(|x| j[b][x] == x)).unwrap();
    let top = (0..n).find(|&t| (0..n).all(|x| m[t][x] == x)).unwrap();
    let mut middle: Vec<usize> = (0..n).filter(|&x| x != bottom && x != top).collect();
    let mut orders = Vec::new();
    let len = middle.len();
    heap_permutations(&mut middle, len, &mut orders);
    orders
        .into_iter()
        .map(|order| {
            let mut old = vec![bottom];
            old.extend(order);
            if n > 1 {
                old.push(top);
            }
            let mut new = vec![0; n];
            for (i, &o) in old.iter().enumerate() {
                new[o] = i;
            }
            [j, m]
                .iter()
                .flat_map(|t| {
                    let (old, new) = (&old, &new);
                    (0..n).flat_map(move |x| (0..n).map(move |y| new[t[old[x]][old[y]]] as u8))
                })
                .collect::<Vec<u8>>()
        })
        .min()
        .unwrap()
}

fn oracle_classes(n: usize) -> BTreeSet<Vec<u8>> {
    let s = semilattices(n);
    let mut classes = BTreeSet::new();
    for j in &s {
        for m in &s {
            let absorb = (0..n).all(|x| (0..n).all(|y| j[x][m[x][y]] == x && m[x][j[x][y]] == x));
            if absorb {
                classes.insert(oracle_code(j, m));
            }
        }
    }
    classes
}

fn oracle_equivalence() {
    for n in 1..=4 {
        let ours: Vec<Vec<u8>> = lattices_of_size(n)
            .iter()
            .map(|(_, l)| {
                let rows = |op: &orthokit::BinaryOp| -> Table { op.rows().map(<[usize]>::to_vec).collect() };
                oracle_code(&rows(l.join()), &rows(l.meet()))
            })
            .collect();
        let distinct: BTreeSet<Vec<u8>> = ours.iter().cloned().collect();
        assert_eq!(distinct.len(), ours.len());
        assert_eq!(distinct, oracle_classes(n), "size {n}");
    }
}

fn determinism() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    fs::create_dir_all(&dir).unwrap();
    let mut files = Vec::new();
    for (name, l) in corpus::all() {
        let path = dir.join(format!("{name}.alg"));
        fs::write(&path, serialize_algebra(&l.to_algebra(name))).unwrap();
        files.push(path.to_str().unwrap().to_owned());
        if let Ok(t) = construct_n(&l) {
            let path = dir.join(format!("{name}-n.alg"));
            fs::write(&path, serialize_algebra(&t.to_algebra(&format!("{name}-n")))).unwrap();
            files.push(path.to_str().unwrap().to_owned());
        }
    }
    let chain = dir.join("lukasiewicz-5.alg");
    fs::write(&chain, serialize_algebra(&lukasiewicz_chain(5).unwrap().to_algebra("l5"))).unwrap();
    files.push(chain.to_str().unwrap().to_owned());

    let mut commands: Vec<Vec<String>> = vec![[
        "enumerate", "--class", "oml", "--max-size", "7", "--count-only",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()];
    for f in &files {
        for sets in ["lattice,ol,oml,commutation,foulis-holland", "coupled", "mv,ba"] {
            for format in ["text", "terse"] {
                commands.push(
                    ["check", f, "--axioms", sets, "--format", format]
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                );
            }
        }
    }
    for command in &commands {
        let args: Vec<&str> = command.iter().map(String::as_str).collect();
        let first = cli(&args);
        let again = cli(&args);
        let mut one = vec!["--threads", "1"];
        one.extend_from_slice(&args);
        let mut eight = vec!["--threads", "8"];
        eight.extend_from_slice(&args);
        assert_eq!(first, again, "{command:?}");
        assert_eq!(first, cli(&one), "{command:?} --threads 1");
        assert_eq!(first, cli(&eight), "{command:?} --threads 8");
    }
}

fn regression_counts() {
    let oracle: Vec<usize> = (1..=4).map(|n| oracle_classes(n).len()).collect();
    assert_eq!(oracle, LATTICE_CLASSES[..4]);
    let counts = |class, max| -> Vec<usize> {
        let task = EnumerationTask::new(class, max).unwrap();
        count_by_size(&task).into_iter().map(|(_, c)| c).collect()
    };
    assert_eq!(counts(StructureClass::Lattice, 8), LATTICE_CLASSES);
    assert_eq!(counts(StructureClass::Ortholattice, 10), ORTHOLATTICE_CLASSES);
    assert_eq!(counts(StructureClass::Orthomodular, 10), ORTHOMODULAR_CLASSES);
    let (_, out) = cli(&["enumerate", "--class", "oml", "--max-size", "10", "--count-only"]);
    assert!(String::from_utf8(out).unwrap().ends_with("total: 8\n"));
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn()); 10] = [
        ("1 construct N on every emitted OML satisfies R1-R6", coupled_axiom_sweep),
        ("2 L(N(L)) = L on every emitted OML", roundtrip_l_sweep),
        ("3 construct L is orthomodular and N(L(N)) = N", construct_l_sweep),
        ("4 O6 negative controls", negative_controls),
        ("5 commutation and Foulis-Holland lemmas", commutation_suite),
        ("6 Lukasiewicz chains and their coupled semirings", mv_suite),
        ("7 Boolean degeneration on B4 and B8", boolean_degeneration),
        ("8 enumerator equals brute-force oracle up to 4", oracle_equivalence),
        ("9 byte-identical output across runs and thread counts", determinism),
        ("10 pinned class counts", regression_counts),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout();
    for (name, criterion) in criteria {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(criterion)).is_ok();
        let verdict = if ok { "PASS" } else { "FAIL" };
        // written past the test harness capture so the lines always show
        let _ = writeln!(stdout, "{verdict} criterion {name} ({:.2?})", start.elapsed());
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
