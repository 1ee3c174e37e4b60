//! Parameter sweeps compared against closed-form predicates.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::blocks::{
    build_sl_block, table1_predicate, table2_predicate, BlockPattern, TorusMode, TABLE1_NAMES,
    TABLE2_NAMES,
};
use crate::lie::classical::{
    classical_in_sl, complex_pair, predicates, product_in_sl, product_in_sp, so_pair, ClassicalInSl,
    ComplexFamily,
};
use crate::temper::tensor::TensorQuestion;
use crate::temper::{check_with, Verdict};
use crate::verify::{CheckOptions, Stats};
use crate::QPair;

/// One parameter point of a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Case {
    Table1 { name: String, p: usize, q: usize },
    Table2 { name: String, p: usize, q: usize, r: usize },
    SlProduct { parts: Vec<usize> },
    SpProduct { parts: Vec<usize> },
    SoPair { p1: usize, q1: usize, p2: usize, q2: usize },
    OrthogonalInSl { p: usize, q: usize },
    SymplecticInSl { m: usize },
    Complex { family: String, m: usize, n: usize },
    Tensor { question: TensorQuestion },
}

fn complex_family(name: &str) -> Result<ComplexFamily> {
    match name {
        "sl" => Ok(ComplexFamily::Sl),
        "so" => Ok(ComplexFamily::So),
        "sp" => Ok(ComplexFamily::Sp),
        _ => Err(Error::UnknownFamily(format!("complex {name}"))),
    }
}

impl Case {
    pub fn build(&self) -> Result<QPair> {
        Ok(match self {
            Case::Table1 { name, p, q } => {
                let pat = BlockPattern::table1(name, *p, *q)?;
                build_sl_block(&pat, TorusMode::Derived)?.with_metadata(self.label())
            }
            Case::Table2 { name, p, q, r } => {
                let pat = BlockPattern::table2(name, *p, *q, *r)?;
                build_sl_block(&pat, TorusMode::Derived)?.with_metadata(self.label())
            }
            Case::SlProduct { parts } => product_in_sl(parts)?,
            Case::SpProduct { parts } => product_in_sp(parts)?,
            Case::SoPair { p1, q1, p2, q2 } => so_pair(*p1, *q1, *p2, *q2)?,
            Case::OrthogonalInSl { p, q } => classical_in_sl(ClassicalInSl::Orthogonal { p: *p, q: *q })?,
            Case::SymplecticInSl { m } => classical_in_sl(ClassicalInSl::Symplectic { m: *m })?,
            Case::Complex { family, m, n } => complex_pair(complex_family(family)?, *m, *n)?,
            Case::Tensor { question } => question.pair()?,
        })
    }

    /// The closed-form answer this case is compared against.
    pub fn predicted(&self) -> Result<bool> {
        Ok(match self {
            Case::Table1 { name, p, q } => table1_predicate(name, *p, *q)?,
            Case::Table2 { name, p, q, r } => table2_predicate(name, *p, *q, *r)?,
            Case::SlProduct { parts } => predicates::sl_product(parts),
            Case::SpProduct { parts } => predicates::sp_product(parts),
            Case::SoPair { p1, q1, p2, q2 } => predicates::so_pair(*p1, *q1, *p2, *q2),
            Case::OrthogonalInSl { .. } => true,
            Case::SymplecticInSl { .. } => false,
            Case::Complex { family, m, n } => predicates::complex(complex_family(family)?, *m, *n),
            Case::Tensor { question } => question.predicted(),
        })
    }

    pub fn label(&self) -> String {
        match self {
            Case::Table1 { name, p, q } => format!("table1 {name} ({p},{q})"),
            Case::Table2 { name, p, q, r } => format!("table2 {name} ({p},{q},{r})"),
            Case::SlProduct { parts } => format!("sl {parts:?}"),
            Case::SpProduct { parts } => format!("sp {parts:?}"),
            Case::SoPair { p1, q1, p2, q2 } => format!("so ({p1},{q1})+({p2},{q2})"),
            Case::OrthogonalInSl { p, q } => format!("so({p},{q}) in sl({})", p + q),
            Case::SymplecticInSl { m } => format!("sp({m}) in sl({})", 2 * m),
            Case::Complex { family, m, n } => format!("complex {family} ({m},{n})"),
            Case::Tensor { question } => question.describe(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanFamily {
    Table1 { pmax: usize, qmax: usize },
    Table2 { max: usize },
    /// All partitions of `n` with at least two parts, in `sl(n)`.
    Example52Sl { n: usize },
    Example52Sp { n: usize },
    /// `p_i, q_i >= 1` with `p + q <= total_max`.
    Example52So { total_max: usize },
    /// Classical subalgebras of `sl` and realified complex products.
    Example51 { max_total: usize, max_m: usize, max_rank: usize },
    /// The tensor product dictionary for one `n`.
    Prop59 { n: usize },
}

/// Partitions of `n` in non-increasing order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl ScanFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ScanFamily::Table1 { .. } => "table1",
            ScanFamily::Table2 { .. } => "table2",
            ScanFamily::Example52Sl { .. } => "example52-sl",
            ScanFamily::Example52Sp { .. } => "example52-sp",
            ScanFamily::Example52So { .. } => "example52-so",
            ScanFamily::Example51 { .. } => "example51",
            ScanFamily::Prop59 { .. } => "prop59",
        }
    }

    pub fn ranges(&self) -> String {
        match *self {
            ScanFamily::Table1 { pmax, qmax } => format!("1<=p<={pmax}, 1<=q<={qmax}"),
            ScanFamily::Table2 { max } => format!("1<=p,q,r<={max}"),
            ScanFamily::Example52Sl { n } | ScanFamily::Example52Sp { n } => format!("partitions of {n}"),
            ScanFamily::Example52So { total_max } => format!("p_i,q_i>=1, p+q<={total_max}"),
            ScanFamily::Example51 { max_total, max_m, max_rank } => {
                format!("p+q<={max_total}, m<={max_m}, factor ranks<={max_rank}")
            }
            ScanFamily::Prop59 { n } => format!("n={n}"),
        }
    }

    pub fn cases(&self) -> Vec<Case> {
        let mut out = Vec::new();
        match *self {
            ScanFamily::Table1 { pmax, qmax } => {
                for name in TABLE1_NAMES {
                    for p in 1..=pmax {
                        for q in 1..=qmax {
                            out.push(Case::Table1 { name: name.into(), p, q });
                        }
                    }
                }
            }
            ScanFamily::Table2 { max } => {
                for name in TABLE2_NAMES {
                    for r in 1..=max {
                        for p in 1..=max {
                            for q in 1..=max {
                                out.push(Case::Table2 { name: name.into(), p, q, r });
                            }
                        }
                    }
                }
            }
            ScanFamily::Example52Sl { n } => {
                out.extend(partitions(n).into_iter().filter(|p| p.len() >= 2).map(|parts| Case::SlProduct { parts }))
            }
            ScanFamily::Example52Sp { n } => {
                out.extend(partitions(n).into_iter().filter(|p| p.len() >= 2).map(|parts| Case::SpProduct { parts }))
            }
            ScanFamily::Example52So { total_max } => {
                for p1 in 1..=total_max {
                    for q1 in 1..=total_max {
                        for p2 in 1..=total_max {
                            for q2 in 1..=total_max {
                                if p1 + q1 + p2 + q2 <= total_max {
                                    out.push(Case::SoPair { p1, q1, p2, q2 });
                                }
                            }
                        }
                    }
                }
            }
            ScanFamily::Example51 { max_total, max_m, max_rank } => {
                for total in 2..=max_total {
                    for p in (0..=total).rev() {
                        out.push(Case::OrthogonalInSl { p, q: total - p });
                    }
                }
                for m in 1..=max_m {
                    out.push(Case::SymplecticInSl { m });
                }
                // factor ranks: sl(m) has rank m-1, so(m) rank m/2, sp(m) rank m
                let families = [("sl", max_rank + 1, 1), ("so", 2 * max_rank + 1, 1), ("sp", max_rank, 1)];
                for (family, top, bottom) in families {
                    for m in bottom..=top {
                        for n in bottom..=top {
                            if family == "so" && m + n < 3 {
                                continue;
                            }
                            out.push(Case::Complex { family: family.into(), m, n });
                        }
                    }
                }
            }
            ScanFamily::Prop59 { n } => {
                out.extend(TensorQuestion::all_for(n).into_iter().map(|question| Case::Tensor { question }))
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanPoint {
    pub case: Case,
    pub label: String,
    pub tempered: bool,
    pub predicted: bool,
    pub hyperplanes: usize,
    pub chambers: usize,
    pub rays: usize,
    #[serde(skip)]
    pub verdict: Verdict,
}

impl ScanPoint {
    pub fn matches(&self) -> bool {
        self.tempered == self.predicted
    }

    pub fn stats(&self) -> Stats {
        self.verdict.stats
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub family: String,
    pub ranges: String,
    pub points: Vec<ScanPoint>,
    /// Labels of the points whose verdict differs from the prediction.
    pub mismatches: Vec<String>,
}

pub fn run_cases(family: &str, ranges: &str, cases: Vec<Case>, options: CheckOptions) -> Result<ScanReport> {
    let points = cases
        .into_par_iter()
        .map(|case| {
            let verdict = check_with(&case.build()?, options)?;
            Ok(ScanPoint {
                label: case.label(),
                tempered: verdict.tempered,
                predicted: case.predicted()?,
                hyperplanes: verdict.stats.hyperplanes,
                chambers: verdict.stats.chambers,
                rays: verdict.stats.rays,
                verdict,
                case,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mismatches = points.iter().filter(|p| !p.matches()).map(|p| p.label.clone()).collect();
    Ok(ScanReport {
        family: family.to_string(),
        ranges: ranges.to_string(),
        points,
        mismatches,
    })
}

/// Runs every case of the family in parallel (order of points is the
/// order of [`ScanFamily::cases`]).
pub fn run_scan(family: ScanFamily, options: CheckOptions) -> Result<ScanReport> {
    run_cases(family.name(), &family.ranges(), family.cases(), options)
}

fn cell(p: &ScanPoint) -> char {
    match (p.tempered, p.matches()) {
        (true, true) => 'T',
        (false, true) => '.',
        (true, false) => 'X',
        (false, false) => 'x',
    }
}

impl ScanReport {
    /// Aligned text: grids for the block tables (rows `p`, columns `q`),
    /// one line per point otherwise.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} ({})", self.family, self.ranges);
        let _ = writeln!(s, "T tempered, . not tempered, X/x disagrees with the predicate");
        let grids: Vec<(String, usize, usize, usize)> = self
            .points
            .iter()
            .filter_map(|p| match &p.case {
                Case::Table1 { name, p, q } => Some((name.clone(), 0, *p, *q)),
                Case::Table2 { name, p, q, r } => Some((name.clone(), *r, *p, *q)),
                _ => None,
            })
            .collect();
        if grids.len() == self.points.len() && !grids.is_empty() {
            let mut keys: Vec<(String, usize)> = grids.iter().map(|(n, r, _, _)| (n.clone(), *r)).collect();
            keys.dedup();
            let pmax = grids.iter().map(|g| g.2).max().unwrap_or(0);
            let qmax = grids.iter().map(|g| g.3).max().unwrap_or(0);
            for (name, r) in keys {
                let title = if r == 0 { name.clone() } else { format!("{name}  r={r}") };
                let _ = writeln!(s, "\n{title}");
                let _ = write!(s, "  p\\q");
                for q in 1..=qmax {
                    let _ = write!(s, " {q:>2}");
                }
                s.push('\n');
                for p in 1..=pmax {
                    let _ = write!(s, "  {p:>3}");
                    for q in 1..=qmax {
                        let c = self
                            .points
                            .iter()
                            .zip(&grids)
                            .find(|(_, g)| g.0 == name && g.1 == r && g.2 == p && g.3 == q)
                            .map_or(' ', |(pt, _)| cell(pt));
                        let _ = write!(s, "  {c}");
                    }
                    s.push('\n');
                }
            }
        } else {
            let width = self.points.iter().map(|p| p.label.len()).max().unwrap_or(0);
            for p in &self.points {
                let _ = writeln!(
                    s,
                    "{:<width$}  {}  predicted {}  chambers {}",
                    p.label,
                    cell(p),
                    if p.predicted { 'T' } else { '.' },
                    p.chambers
                );
            }
        }
        let _ = writeln!(
            s,
            "\n{} points, {} mismatches",
            self.points.len(),
            self.mismatches.len()
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn table1_small_scan() {
        let report = run_scan(ScanFamily::Table1 { pmax: 3, qmax: 3 }, CheckOptions::reduced()).unwrap();
        assert_eq!(report.points.len(), 36);
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
        assert!(report.render_text().contains("H4"));
    }
}
