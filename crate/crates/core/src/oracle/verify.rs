use crate::echelon::unit_column_capacity;
use crate::engine::TheoremCertificate;
use crate::matrix::IndexedMatrix;
use crate::transversal::Instance;

/// Outcome of an independent certificate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// The first failed check, if any.
    pub diagnostic: Option<String>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.diagnostic.is_none()
    }
}

/// Blocks `i` such that some column of `(QM)[A′, B_i]` holds a unit and no
/// non-zero non-unit.
pub fn bad_blocks(inst: &Instance, qm: &IndexedMatrix, rows: &[usize]) -> Vec<usize> {
    let pi = inst.partition();
    (1..=pi.len())
        .filter(|&i| {
            pi.block(i).iter().any(|c| {
                let entries: Vec<_> = rows.iter().map(|&r| &qm[(r, c)]).collect();
                entries.iter().any(|e| e.is_unit()) && !entries.iter().any(|e| e.is_nonzero_nonunit())
            })
        })
        .collect()
}

/// Re-checks a certificate from its data alone; the audit is ignored.
pub fn verify_certificate(inst: &Instance, cert: &TheoremCertificate) -> Verdict {
    match check(inst, cert) {
        Ok(()) => Verdict { diagnostic: None },
        Err(d) => Verdict { diagnostic: Some(d) },
    }
}

fn check(inst: &Instance, cert: &TheoremCertificate) -> Result<(), String> {
    let m = inst.matrix();
    let rows = m.rows();
    let p = rows.len();
    let q = &cert.q;
    if q.ring() != m.ring() {
        return Err(format!("Q is over {}, M over {}", q.ring(), m.ring()));
    }
    if q.rows() != rows || q.cols() != rows {
        return Err(format!("Q must be indexed by {rows} x {rows}"));
    }
    if !q.determinant().map(|d| d.is_unit()).unwrap_or(false) {
        return Err("Q not invertible".into());
    }
    if cert.rows.is_empty() {
        return Err("A′ empty".into());
    }
    if !cert.rows.is_subset(rows) {
        return Err(format!("A′ = {} is not contained in {rows}", cert.rows));
    }
    if cert.m != cert.rows.len() {
        return Err(format!("m mismatch: m = {}, |A′| = {}", cert.m, cert.rows.len()));
    }
    if cert.m == 0 || cert.m > p {
        return Err(format!("m = {} outside 1..={p}", cert.m));
    }
    let qm = q.matmul(m).map_err(|e| e.to_string())?;
    let t = unit_column_capacity(m);
    let shown = qm.distinct_unit_columns();
    if shown != t {
        return Err(format!("QM not in reduced echelon form: {shown} unit columns, capacity {t}"));
    }
    let n = inst.partition().len();
    if let Some(&i) = cert.possibly_bad_blocks.iter().find(|&&i| i == 0 || i > n) {
        return Err(format!("block index {i} outside 1..={n}"));
    }
    let bad = bad_blocks(inst, &qm, cert.rows.as_slice());
    if bad.len() > cert.m - 1 {
        return Err(format!(
            "bad-block count exceeds m−1: blocks {bad:?} are bad, m = {}",
            cert.m
        ));
    }
    if let Some(i) = bad.iter().find(|i| !cert.possibly_bad_blocks.contains(i)) {
        return Err(format!("block {i} is bad but not listed as possibly bad"));
    }
    Ok(())
}
