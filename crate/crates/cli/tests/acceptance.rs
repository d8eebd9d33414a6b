use std::fs;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ringcert::echelon::{reduce, unit_column_capacity};
use ringcert::engine::{certify, gap_violations, Branch, TheoremCertificate};
use ringcert::format::{CertificateFile, Entry, InstanceFile, WitnessReport};
use ringcert::matrix::{IndexSet, IndexedMatrix};
use ringcert::oracle::{
    general_linear_group, generate, independent_transversal, is_null_row_form, t_max_with_group, verify_certificate,
    InstanceSpec, Sampler,
};
use ringcert::rado::{corollary_nullrow_form, rado_condition};
use ringcert::rings::{Ring, RingKind};
use ringcert::transversal::{hypothesis_holds, AdmissibleSet, Instance};
use ringcert::Error;
use tempfile::TempDir;

const THEOREM_PER_RING: usize = 500;
const THEOREM_TIME_LIMIT: Duration = Duration::from_secs(300);
const COROLLARY_PER_RING: usize = 500;
const ECHELON_RANDOM_PER_RING: usize = 200;
const FAILING_INSTANCES: usize = 200;
const ROUND_TRIP_PER_RING: usize = 50;
const ENTRY_BOUND: u64 = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Self {
        let detail = match failures.first() {
            None => summary,
            Some(f) => format!("{summary}; {} failure(s), first: {f}", failures.len()),
        };
        Outcome { pass: failures.is_empty(), detail }
    }
}

fn rings() -> Vec<Ring> {
    [
        RingKind::Integers,
        RingKind::IntegersMod(4),
        RingKind::IntegersMod(6),
        RingKind::PrimeField(2),
        RingKind::PrimeField(3),
    ]
    .into_iter()
    .map(|k| Ring::new(k).unwrap())
    .collect()
}

struct Corpus {
    instances: Vec<(InstanceSpec, Instance)>,
    skipped: usize,
}

/// Draws `count` instances for `ring` with shapes `p <= max_p`, `q <= max_q`,
/// `n <= max_n`. Specs that exhaust the generator's attempt cap are skipped.
fn corpus(ring: Ring, count: usize, max: (usize, usize, usize), salt: u64, require: impl Fn(usize) -> bool) -> Corpus {
    let (max_p, max_q, max_n) = max;
    let mut shapes = Sampler::new(salt);
    let mut out = Corpus { instances: Vec::new(), skipped: 0 };
    let mut seed = salt << 32;
    while out.instances.len() < count {
        let p = shapes.between(1, max_p as i64) as usize;
        let q = shapes.between(1, max_q as i64) as usize;
        let n = shapes.between(1, q.min(max_n) as i64) as usize;
        let spec = InstanceSpec { ring, p, q, n, entry_bound: ENTRY_BOUND, seed };
        seed += 1;
        match generate(&spec, require(out.instances.len())) {
            Ok(g) => out.instances.push((spec, g.instance)),
            Err(Error::AttemptCapExceeded(_)) => out.skipped += 1,
            Err(e) => panic!("generator failed on {spec:?}: {e}"),
        }
    }
    out
}

fn ring_salt(ring: Ring) -> u64 {
    match ring.kind() {
        RingKind::Integers => 1,
        RingKind::IntegersMod(n) => 100 + n,
        RingKind::PrimeField(p) => 200 + p,
        RingKind::Rationals => 300,
    }
}

fn ringcert(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ringcert")).args(args).output().unwrap()
}

struct TheoremRun {
    runs: Vec<(Instance, TheoremCertificate)>,
    outcome: Outcome,
}

fn criterion_1() -> TheoremRun {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut runs = Vec::new();
    let mut skipped = 0;
    for ring in rings() {
        let c = corpus(ring, THEOREM_PER_RING, (3, 8, 6), ring_salt(ring), |_| true);
        skipped += c.skipped;
        for (spec, inst) in c.instances {
            match certify(&inst) {
                Ok(cert) => {
                    if let Some(d) = verify_certificate(&inst, &cert).diagnostic {
                        failures.push(format!("{spec:?}: {d}"));
                    }
                    runs.push((inst, cert));
                }
                Err(e) => failures.push(format!("{spec:?}: {e}")),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > THEOREM_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}, limit {THEOREM_TIME_LIMIT:?}"));
    }
    let summary = format!(
        "{} hypothesis instances over Z, Z/4, Z/6, GF(2), GF(3) certified and verified in {:.2}s (limit {}s), {} capped specs skipped",
        runs.len(),
        elapsed.as_secs_f64(),
        THEOREM_TIME_LIMIT.as_secs(),
        skipped
    );
    TheoremRun { outcome: Outcome::new(&failures, summary), runs }
}

fn field_corpus() -> Vec<(InstanceSpec, Instance)> {
    let mut all = Vec::new();
    for ring in [Ring::prime_field(2).unwrap(), Ring::prime_field(3).unwrap()] {
        all.extend(corpus(ring, COROLLARY_PER_RING, (3, 7, 5), 1000 + ring_salt(ring), |i| i % 2 == 0).instances);
    }
    all
}

fn criterion_2(corpus: &[(InstanceSpec, Instance)]) -> Outcome {
    let mut failures = Vec::new();
    let mut holding = 0;
    for (spec, inst) in corpus {
        let holds = hypothesis_holds(inst);
        holding += usize::from(holds);
        match corollary_nullrow_form(inst) {
            Ok(Some(form)) if holds => {
                if !is_null_row_form(inst, &form.q, form.m) {
                    failures.push(format!("{spec:?}: returned form is not a null-row form"));
                }
            }
            Ok(None) if !holds => {}
            Ok(r) => failures.push(format!("{spec:?}: hypothesis {holds} but form returned = {}", r.is_some())),
            Err(e) => failures.push(format!("{spec:?}: {e}")),
        }
    }
    let summary = format!(
        "{} instances over GF(2), GF(3) ({} satisfy the hypothesis), null-row form exists exactly when it holds",
        corpus.len(),
        holding
    );
    Outcome::new(&failures, summary)
}

fn check_capacity(m: &IndexedMatrix, group: &[Vec<Vec<u64>>], failures: &mut Vec<String>) {
    let expected = t_max_with_group(group, m).unwrap();
    let t = unit_column_capacity(m);
    let r = reduce(m);
    let consistent = r.t == t
        && r.q.is_invertible().unwrap()
        && r.q.matmul(m).unwrap() == r.reduced
        && r.reduced.distinct_unit_columns() == t;
    if t != expected || !consistent {
        failures.push(format!("{:?} over {}: capacity {t}, exhaustive {expected}", m.to_rows(), m.ring()));
    }
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut exhaustive = 0;
    let mut random = 0;
    for modulus in [2u64, 3] {
        let ring = Ring::integers_mod(modulus).unwrap();
        for p in 1..=2usize {
            let group = general_linear_group(modulus, p).unwrap();
            for q in 1..=3usize {
                for bits in 0u32..(1 << (p * q)) {
                    let rows: Vec<Vec<i64>> =
                        (0..p).map(|i| (0..q).map(|j| i64::from((bits >> (i * q + j)) & 1)).collect()).collect();
                    check_capacity(&IndexedMatrix::from_ints(ring, &rows).unwrap(), &group, &mut failures);
                    exhaustive += 1;
                }
            }
        }
        let groups: Vec<_> = (1..=3).map(|p| general_linear_group(modulus, p).unwrap()).collect();
        let mut s = Sampler::new(2000 + modulus);
        for _ in 0..ECHELON_RANDOM_PER_RING {
            let p = s.between(1, 3) as usize;
            let q = s.between(1, 3) as usize;
            let rows: Vec<Vec<i64>> = (0..p).map(|_| (0..q).map(|_| s.below(modulus) as i64).collect()).collect();
            check_capacity(&IndexedMatrix::from_ints(ring, &rows).unwrap(), &groups[p - 1], &mut failures);
            random += 1;
        }
    }
    let summary = format!(
        "unit-column capacity equals exhaustive GL search on {exhaustive} {{0,1}} matrices up to 2x3 and {random} random matrices up to 3x3 over Z/2, Z/3"
    );
    Outcome::new(&failures, summary)
}

fn criterion_4(corpus: &[(InstanceSpec, Instance)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for (spec, inst) in corpus {
        let n = inst.partition().len();
        for k in 0..=spec.p {
            let brute = independent_transversal(inst, k).is_some();
            if k <= n {
                match rado_condition(inst, k) {
                    Ok(r) if r.holds == brute => {}
                    Ok(r) => failures.push(format!("{spec:?} k={k}: rank condition {} vs search {brute}", r.holds)),
                    Err(e) => failures.push(format!("{spec:?} k={k}: {e}")),
                }
            } else if brute {
                failures.push(format!("{spec:?} k={k}: transversal larger than the block count"));
            }
            checks += 1;
        }
    }
    Outcome::new(&failures, format!("rank condition matches exhaustive search in {checks} (instance, k) checks"))
}

fn criterion_5(runs: &[(Instance, TheoremCertificate)]) -> Outcome {
    let mut failures = Vec::new();
    let mut swaps = 0;
    for (inst, cert) in runs {
        let a = &cert.audit;
        swaps += a.swaps.len();
        if let Some(step) = a.swaps.iter().find(|s| !s.after.improves_on(&s.before)) {
            failures.push(format!("{:?}: swap -{} +{} does not improve", inst.matrix().to_rows(), step.removed, step.added));
        }
        let bound = a.initial_distance.map_or(0, |d| d.saturating_sub(1));
        if a.swaps.len() > bound {
            failures.push(format!("{:?}: {} swaps, bound {bound}", inst.matrix().to_rows(), a.swaps.len()));
        }
    }
    let summary = format!("{} audit trails, {swaps} swaps, each strictly improving and within distance - 1", runs.len());
    Outcome::new(&failures, summary)
}

fn criterion_6(runs: &[(Instance, TheoremCertificate)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (inst, cert) in runs {
        if !matches!(cert.branch, Branch::NoWeightTwo | Branch::FirstKind) {
            continue;
        }
        checked += 1;
        let rows = inst.matrix().to_rows();
        let Some(cols) = cert.audit.final_set.clone() else {
            failures.push(format!("{rows:?}: no final set recorded"));
            continue;
        };
        match AdmissibleSet::new(inst, cols) {
            Ok(Some(set)) => {
                let v = gap_violations(inst, &set);
                if !v.is_empty() || !cert.audit.final_gap_violations.is_empty() {
                    failures.push(format!("{rows:?}: {} gap violations", v.len()));
                }
            }
            _ => failures.push(format!("{rows:?}: final set is not admissible")),
        }
    }
    Outcome::new(&failures, format!("{checked} admissible-set certificates end with no gap violations"))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut files = 0;
    for ring in rings() {
        let c = corpus(ring, ROUND_TRIP_PER_RING, (3, 8, 6), 3000 + ring_salt(ring), |i| i % 2 == 0);
        for (i, (spec, inst)) in c.instances.iter().enumerate() {
            let again = generate(spec, i % 2 == 0).unwrap().instance;
            let text = InstanceFile::from_instance(inst, None).to_json();
            if again != *inst {
                failures.push(format!("{spec:?}: regeneration differs"));
            }
            match InstanceFile::parse(&text) {
                Ok(f) if f.to_json() == text && f.to_instance().ok().as_ref() == Some(inst) => {}
                _ => failures.push(format!("{spec:?}: instance file does not round-trip")),
            }
            files += 1;
            if let (Ok(a), Ok(b)) = (certify(inst), certify(inst)) {
                let (ta, tb) = (CertificateFile::from_certificate(&a).to_json(), CertificateFile::from_certificate(&b).to_json());
                if ta != tb {
                    failures.push(format!("{spec:?}: certificates differ between runs"));
                }
                match CertificateFile::parse(&ta) {
                    Ok(f) if f.to_json() == ta => {}
                    _ => failures.push(format!("{spec:?}: certificate file does not round-trip")),
                }
                files += 1;
            }
        }
    }

    let dir = TempDir::new().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let mut binary_runs = 0;
    for ring in ["Z", "Z/4", "Z/6", "GF(2)", "GF(3)"] {
        let gen = |name: &str| {
            let out = path(name);
            let o = ringcert(&["gen", "--ring", ring, "-p", "2", "-q", "5", "-n", "3", "--seed", "7", "--require-hypothesis", "-o", &out]);
            (o.status.code(), fs::read(&out).ok())
        };
        let (a, b) = (gen("a.json"), gen("b.json"));
        if a.0 != Some(0) || a != b {
            failures.push(format!("gen over {ring}: runs differ or failed ({:?})", a.0));
            continue;
        }
        let cert = |name: &str| {
            let out = path(name);
            let o = ringcert(&["certify", &path("a.json"), "-o", &out]);
            (o.status.code(), fs::read(&out).ok())
        };
        let (x, y) = (cert("x.json"), cert("y.json"));
        if x.0 != Some(0) || x != y {
            failures.push(format!("certify over {ring}: runs differ or failed ({:?})", x.0));
        }
        binary_runs += 1;
    }
    let summary = format!(
        "{files} instance and certificate files identical across runs and stable under parse/serialize; gen and certify byte-identical on {binary_runs} seeded binary runs"
    );
    Outcome::new(&failures, summary)
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let dir = TempDir::new().unwrap();
    let per_ring = FAILING_INSTANCES / rings().len();
    let mut total = 0;
    for ring in rings() {
        let mut shapes = Sampler::new(4000 + ring_salt(ring));
        let mut seed = (4000 + ring_salt(ring)) << 32;
        let mut found = 0;
        while found < per_ring {
            let p = shapes.between(1, 3) as usize;
            let q = shapes.between(p as i64, 8) as usize;
            let n = shapes.between(p as i64, q.min(6) as i64) as usize;
            let spec = InstanceSpec { ring, p, q, n, entry_bound: ENTRY_BOUND, seed };
            seed += 1;
            let inst = generate(&spec, false).unwrap().instance;
            if hypothesis_holds(&inst) {
                continue;
            }
            found += 1;
            total += 1;
            let file = dir.path().join("failing.json");
            fs::write(&file, InstanceFile::from_instance(&inst, None).to_json()).unwrap();
            let o = ringcert(&["certify", file.to_str().unwrap()]);
            if o.status.code() != Some(3) {
                failures.push(format!("{spec:?}: exit {:?}", o.status.code()));
                continue;
            }
            let report = match WitnessReport::parse(&String::from_utf8_lossy(&o.stdout)) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{spec:?}: witness report: {e}"));
                    continue;
                }
            };
            let cols = IndexSet::new(report.witness_columns.iter().copied()).unwrap();
            let m = inst.matrix();
            let ok = cols.len() == p
                && inst.partition().is_partial_transversal(&cols)
                && m.submatrix(m.rows(), &cols).ok().and_then(|s| s.determinant().ok()).is_some_and(|d| {
                    d.is_unit() && Entry::from_element(&d) == report.determinant
                });
            if !ok {
                failures.push(format!("{spec:?}: witness {cols} is not an invertible transversal"));
            }
        }
    }
    Outcome::new(&failures, format!("{total} failing instances: certify exits 3 with an invertible transversal witness"))
}

fn main() -> ExitCode {
    let theorem = criterion_1();
    let fields = field_corpus();
    let outcomes = [
        ("theorem end-to-end", theorem.outcome),
        ("corollary equivalence", criterion_2(&fields)),
        ("echelon exactness", criterion_3()),
        ("rank condition", criterion_4(&fields)),
        ("proof measure", criterion_5(&theorem.runs)),
        ("gap condition", criterion_6(&theorem.runs)),
        ("determinism and round-trip", criterion_7()),
        ("failing hypothesis", criterion_8()),
    ];
    let mut all = true;
    for (i, (name, o)) in outcomes.iter().enumerate() {
        all &= o.pass;
        println!("criterion {} {}: {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
