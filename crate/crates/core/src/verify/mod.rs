//! Exact global nonnegativity of homogeneous PL functions.
//!
//! `f = sum c_i |h_i| + l` is linear on every chamber of the arrangement
//! `{h_i = 0}`, so it is nonnegative everywhere iff it is nonnegative on the
//! extreme rays (and lineality directions) of every chamber. Chambers are
//! enumerated by inserting hyperplanes one at a time and splitting cones
//! with the double description method; everything happens in intrinsic
//! coordinates of the torus slice on primitive integer vectors.

mod cone;
mod recheck;
pub mod symmetry;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::form::LinearForm;
use crate::pl::PLFunction;
use crate::scalar::{lex_cmp, Scalar};
use crate::torus::TorusSpace;
use crate::Rational;

use cone::{idot, make_primitive, Cone, IVec, Split};
pub use recheck::{recheck_certificate, recheck_witness, RecheckError};
pub use symmetry::{SymmetryClass, SymmetryGroup};

/// Optional reductions of the search. Both are off by default, in which
/// case every chamber of the whole slice is enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Restrict to a fundamental domain of the verified coordinate
    /// symmetries of `f` (see [`SymmetryGroup::detect`]).
    pub dominant_chamber: bool,
    /// For even `f`, enumerate only one of each pair of opposite chambers.
    pub prune_antipodal: bool,
}

impl CheckOptions {
    pub fn full() -> Self {
        Self::default()
    }

    pub fn reduced() -> Self {
        CheckOptions {
            dominant_chamber: true,
            prune_antipodal: true,
        }
    }
}

/// A full-dimensional cell of the arrangement (within the search region).
#[derive(Clone, Debug, PartialEq)]
pub struct Chamber {
    /// Sign of each certificate hyperplane on the chamber interior.
    pub sign_vector: Vec<i8>,
    /// Indices into the certificate's ray table.
    pub rays: Vec<usize>,
    /// `f` restricted to the chamber, as a canonical ambient form.
    pub restricted_linear_form: LinearForm<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// Canonical form of the function that was certified.
    pub function: PLFunction<Rational>,
    /// Canonical hyperplane normals, indexing every sign vector.
    pub hyperplanes: Vec<LinearForm<Rational>>,
    /// Halfspaces `form >= 0` bounding the search region (empty when the
    /// whole slice was enumerated).
    pub region: Vec<LinearForm<Rational>>,
    pub symmetry: SymmetryGroup,
    pub antipodal_pruned: bool,
    /// Ambient primitive integer ray directions shared by the chambers.
    pub rays: Vec<Vec<Rational>>,
    pub ray_values: Vec<Rational>,
    pub chambers: Vec<Chamber>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub function: PLFunction<Rational>,
    pub direction: Vec<Rational>,
    pub value: Rational,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Stats {
    pub hyperplanes: usize,
    pub chambers: usize,
    pub rays: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    Certificate(Certificate),
    Witness(Witness),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub evidence: Evidence,
    pub stats: Stats,
}

impl Outcome {
    pub fn is_nonnegative(&self) -> bool {
        matches!(self.evidence, Evidence::Certificate(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.evidence {
            Evidence::Witness(w) => Some(w),
            Evidence::Certificate(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.evidence {
            Evidence::Certificate(c) => Some(c),
            Evidence::Witness(_) => None,
        }
    }
}

/// Deduplicated, sign-normalized hyperplanes of every abs-term of `f`
/// restricted to the slice, including terms whose coefficients cancel.
pub fn distinct_hyperplanes<T: Scalar>(f: &PLFunction<T>) -> Vec<LinearForm<T>> {
    let mut out: Vec<LinearForm<T>> = Vec::new();
    for (_, a) in f.abs_terms() {
        if let Some((h, _)) = f.space().reduce(a).hyperplane_normal() {
            if let Err(i) = out.binary_search_by(|g| g.lex_cmp(&h)) {
                out.insert(i, h);
            }
        }
    }
    out
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow)
}

/// Scales rational vectors by one common positive factor into integers.
fn integerize(rows: &[Vec<Rational>]) -> Result<(Vec<IVec>, BigInt)> {
    let mut den = BigInt::one();
    for row in rows {
        for x in row {
            den = den.lcm(x.denom());
        }
    }
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut v = Vec::with_capacity(row.len());
        for x in row {
            v.push(to_i128(&(x.numer() * (&den / x.denom())))?);
        }
        out.push(v);
    }
    Ok((out, den))
}

fn primitive(v: &[Rational]) -> Result<IVec> {
    let (mut rows, _) = integerize(&[v.to_vec()])?;
    let mut r = rows.pop().expect("one row");
    make_primitive(&mut r);
    Ok(r)
}

fn rational_vec(v: &[i128]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect()
}

/// `f` scaled by a positive integer, in intrinsic integer coordinates.
struct IntegerPL {
    coeffs: Vec<i128>,
    normals: Vec<IVec>,
    linear: IVec,
    scale: BigInt,
}

impl IntegerPL {
    fn value(&self, z: &[i128]) -> Result<i128> {
        let mut acc = idot(&self.linear, z)?;
        for (c, h) in self.coeffs.iter().zip(&self.normals) {
            let v = idot(h, z)?.checked_abs().ok_or(Error::Overflow)?;
            acc = c
                .checked_mul(v)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    fn restricted(&self, signs: &[i8]) -> Result<IVec> {
        let mut g = self.linear.clone();
        for ((c, h), &s) in self.coeffs.iter().zip(&self.normals).zip(signs) {
            let k = if s < 0 { -c } else { *c };
            for (gi, hi) in g.iter_mut().zip(h) {
                *gi = k
                    .checked_mul(*hi)
                    .and_then(|p| gi.checked_add(p))
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(g)
    }
}

struct Search<'a> {
    space: &'a TorusSpace<Rational>,
    canon: &'a PLFunction<Rational>,
    ipl: IntegerPL,
    ray_index: HashMap<IVec, usize>,
    rays: Vec<Vec<Rational>>,
    ray_values: Vec<Rational>,
    chambers: Vec<Chamber>,
}

impl Search<'_> {
    fn ray(&mut self, z: IVec) -> Result<usize> {
        if let Some(&i) = self.ray_index.get(&z) {
            return Ok(i);
        }
        let zq = rational_vec(&z);
        let y = rational_vec(&primitive(&self.space.lift(&zq))?);
        let value = self.canon.evaluate_unchecked(&y);
        // The lift rescales by a positive factor, so signs must agree.
        debug_assert_eq!(self.ipl.value(&z)?.signum() as i8, value.sign());
        let i = self.rays.len();
        self.rays.push(y);
        self.ray_values.push(value);
        self.ray_index.insert(z, i);
        Ok(i)
    }

    fn leaf(&mut self, cone: &Cone, signs: &[i8]) -> Result<()> {
        let mut rays = Vec::new();
        for z in cone.generators() {
            rays.push(self.ray(z)?);
        }
        rays.sort_unstable();
        let g = self.ipl.restricted(signs)?;
        let n = self.space.ambient_dim();
        let mut form = vec![Rational::zero(); n];
        let scale = Rational::from_integer(self.ipl.scale.clone());
        for (&col, gi) in self.space.free_columns().iter().zip(&g) {
            form[col] = Rational::from_integer(BigInt::from(*gi)) / &scale;
        }
        self.chambers.push(Chamber {
            sign_vector: signs.to_vec(),
            rays,
            restricted_linear_form: LinearForm::new(form),
        });
        Ok(())
    }

    fn descend(&mut self, cone: Cone, depth: usize, signs: &mut Vec<i8>) -> Result<()> {
        if depth == self.ipl.normals.len() {
            return self.leaf(&cone, signs);
        }
        let h = self.ipl.normals[depth].clone();
        match cone.split(&h)? {
            Split::Plus(c) => {
                signs.push(1);
                self.descend(c, depth + 1, signs)?;
                signs.pop();
            }
            Split::Minus(c) => {
                signs.push(-1);
                self.descend(c, depth + 1, signs)?;
                signs.pop();
            }
            Split::Both(p, m) => {
                signs.push(1);
                self.descend(p, depth + 1, signs)?;
                signs.pop();
                signs.push(-1);
                self.descend(m, depth + 1, signs)?;
                signs.pop();
            }
        }
        Ok(())
    }
}

/// [`is_nonnegative_with`] with full enumeration.
pub fn is_nonnegative(f: &PLFunction<Rational>) -> Result<Outcome> {
    is_nonnegative_with(f, CheckOptions::full())
}

/// Decides `f >= 0` on the whole slice. The result is a certificate listing
/// every chamber of the search region with its rays, or a witness: the ray
/// of most negative value, ties broken by the lexicographically smallest
/// direction.
pub fn is_nonnegative_with(f: &PLFunction<Rational>, options: CheckOptions) -> Result<Outcome> {
    let space = f.space().clone();
    let canon = f.canonical();
    let hyperplanes: Vec<LinearForm<Rational>> =
        canon.abs_terms().iter().map(|(_, h)| h.clone()).collect();
    let d = space.dim();

    let symmetry = if options.dominant_chamber && d > 0 {
        SymmetryGroup::detect(&canon)
    } else {
        SymmetryGroup::trivial()
    };
    let mut region = symmetry.fundamental_region(&space);
    let mut antipodal_pruned = false;
    if options.prune_antipodal && canon.is_even() && d > 0 {
        let halving = if symmetry.is_trivial() {
            hyperplanes.first().cloned()
        } else {
            symmetry.invariant_functional(&space)
        };
        if let Some(h) = halving {
            region.push(h);
            antipodal_pruned = true;
        }
    }

    let intrinsic = |forms: &[LinearForm<Rational>]| -> Vec<Vec<Rational>> {
        forms
            .iter()
            .map(|h| space.intrinsic_form(h).into_coeffs())
            .collect()
    };
    let mut normals = Vec::with_capacity(hyperplanes.len());
    for row in intrinsic(&hyperplanes) {
        normals.push(primitive(&row)?);
    }
    let mut scaled: Vec<Vec<Rational>> = vec![canon
        .abs_terms()
        .iter()
        .map(|(c, _)| c.clone())
        .collect()];
    scaled.push(space.intrinsic_form(canon.linear_term()).into_coeffs());
    let (mut ints, scale) = integerize(&scaled)?;
    let linear = ints.pop().expect("linear row");
    let coeffs = ints.pop().expect("coefficient row");

    let mut search = Search {
        space: &space,
        canon: &canon,
        ipl: IntegerPL {
            coeffs,
            normals,
            linear,
            scale,
        },
        ray_index: HashMap::new(),
        rays: Vec::new(),
        ray_values: Vec::new(),
        chambers: Vec::new(),
    };

    let mut cone = Cone::whole(d, region.len() + hyperplanes.len());
    for r in intrinsic(&region) {
        cone = cone.restrict(&primitive(&r)?)?;
    }
    search.descend(cone, 0, &mut Vec::with_capacity(hyperplanes.len()))?;

    let stats = Stats {
        hyperplanes: hyperplanes.len(),
        chambers: search.chambers.len(),
        rays: search.rays.len(),
    };
    let mut worst: Option<usize> = None;
    for (i, v) in search.ray_values.iter().enumerate() {
        if v.is_negative() {
            let better = match worst {
                None => true,
                Some(w) => {
                    let wv = &search.ray_values[w];
                    v < wv || (v == wv && lex_cmp(&search.rays[i], &search.rays[w]).is_lt())
                }
            };
            if better {
                worst = Some(i);
            }
        }
    }
    let evidence = match worst {
        Some(i) => Evidence::Witness(Witness {
            function: canon.clone(),
            direction: search.rays[i].clone(),
            value: search.ray_values[i].clone(),
        }),
        None => Evidence::Certificate(Certificate {
            function: canon.clone(),
            hyperplanes,
            region,
            symmetry,
            antipodal_pruned,
            rays: search.rays,
            ray_values: search.ray_values,
            chambers: search.chambers,
        }),
    };
    Ok(Outcome { evidence, stats })
}

/// Result of the brute-force grid search.
#[derive(Clone, Debug, PartialEq)]
pub enum GridResult {
    Violation(Witness),
    NoViolation,
}

/// Upper bound on the number of grid points [`grid_oracle`] will visit.
pub const GRID_POINT_LIMIT: u128 = 50_000_000;

/// Evaluates `f` at every ambient integer point `k` with `max |k_i| = R`
/// (`R = resolution`) that lies on the slice, i.e. at the rational points
/// `k / R` of the unit sphere of the max-norm. Returns the most negative
/// point found (ties: lexicographically smallest). The terms of `f` are
/// used as given, independently of the chamber machinery.
pub fn grid_oracle(f: &PLFunction<Rational>, resolution: u32) -> Result<GridResult> {
    if resolution == 0 {
        return Err(Error::InvalidParameters("resolution must be at least 1".into()));
    }
    let space = f.space();
    let n = space.ambient_dim();
    let r = resolution as i128;
    let side = (2 * r + 1) as u128;
    let points = side.checked_pow(n as u32).unwrap_or(u128::MAX);
    if points > GRID_POINT_LIMIT {
        return Err(Error::TooLarge(format!(
            "{points} grid points at resolution {resolution} in dimension {n}"
        )));
    }
    // Integer data: terms c |a| with a integral, scaled by a common factor.
    let mut forms = Vec::new();
    let mut coeffs = Vec::new();
    for (c, a) in f.abs_terms() {
        let (rows, den) = integerize(&[a.coeffs().to_vec()])?;
        forms.push(rows.into_iter().next().expect("one row"));
        coeffs.push(c.clone() / Rational::from_integer(den));
    }
    let (lin, lden) = integerize(&[f.linear_term().coeffs().to_vec()])?;
    coeffs.push(Rational::one() / Rational::from_integer(lden));
    let (cs, _) = integerize(&[coeffs])?;
    let cs = &cs[0];
    let lin = &lin[0];
    let (cons, _) = integerize(
        &space
            .constraints()
            .iter()
            .map(|c| c.coeffs().to_vec())
            .collect::<Vec<_>>(),
    )?;

    let mut k = vec![-r; n];
    let mut best: Option<(i128, IVec)> = None;
    'grid: while n > 0 {
        if k.iter().any(|x| x.abs() == r) && cons.iter().all(|c| idot(c, &k) == Ok(0)) {
            let mut v = idot(lin, &k)?
                .checked_mul(cs[forms.len()])
                .ok_or(Error::Overflow)?;
            for (a, c) in forms.iter().zip(cs.iter()) {
                let t = idot(a, &k)?.abs();
                v = c.checked_mul(t).and_then(|p| v.checked_add(p)).ok_or(Error::Overflow)?;
            }
            if v < 0 && best.as_ref().map_or(true, |(bv, _)| v < *bv) {
                best = Some((v, k.clone()));
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                break 'grid;
            }
            i -= 1;
            if k[i] < r {
                k[i] += 1;
                break;
            }
            k[i] = -r;
        }
    }
    Ok(match best {
        None => GridResult::NoViolation,
        Some((_, k)) => {
            let rq = Rational::from_integer(BigInt::from(r));
            let direction: Vec<Rational> = rational_vec(&k).into_iter().map(|x| x / &rq).collect();
            let value = f.evaluate(&direction)?;
            GridResult::Violation(Witness {
                function: f.clone(),
                direction,
                value,
            })
        }
    })
}
