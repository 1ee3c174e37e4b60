//! Re-validation of serialized evidence by direct evaluation only.

use num_traits::Signed;

use super::symmetry::is_symmetry;
use super::{distinct_hyperplanes, Certificate, Witness};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecheckError {
    #[error("hyperplane list does not match the function")]
    Hyperplanes,
    #[error("ray {0} is not a point of the torus slice")]
    RayOutsideSlice(usize),
    #[error("ray {index}: recorded value {recorded}, actual {actual}")]
    RayValue {
        index: usize,
        recorded: String,
        actual: String,
    },
    #[error("ray {0} is not a nonzero primitive integer vector")]
    NotPrimitive(usize),
    #[error("ray {0} has a negative value")]
    NegativeRay(usize),
    #[error("ray {ray} violates the sign vector of chamber {chamber}")]
    SignVector { chamber: usize, ray: usize },
    #[error("chamber {0}: restricted linear form disagrees with the function on its rays")]
    RestrictedForm(usize),
    #[error("chamber {0} references a missing ray or has a malformed sign vector")]
    ChamberShape(usize),
    #[error("ray {ray} lies outside the claimed search region")]
    Region { ray: usize },
    #[error("claimed symmetry is not a symmetry of the function")]
    Symmetry,
    #[error("claimed search region is not the fundamental domain of the claimed symmetry")]
    RegionMismatch,
    #[error("witness direction is not a point of the torus slice")]
    WitnessOutsideSlice,
    #[error("witness: recorded value {recorded}, actual {actual}")]
    WitnessValue { recorded: String, actual: String },
    #[error("witness value is not negative")]
    WitnessNotNegative,
}

/// Checks a certificate without re-running enumeration: the hyperplanes
/// are those of the function, every listed ray is a primitive integer
/// vector on the slice and in the search region, has the recorded value and
/// that value is nonnegative, every chamber's rays respect its sign vector,
/// and each restricted linear form agrees with the function on the chamber's rays. Claimed
/// symmetries are re-verified and must produce the recorded region.
pub fn recheck_certificate(cert: &Certificate) -> Result<(), RecheckError> {
    let f = &cert.function;
    let space = f.space();
    if distinct_hyperplanes(f) != cert.hyperplanes {
        return Err(RecheckError::Hyperplanes);
    }
    let n = space.ambient_dim();
    for (perm, signs) in cert.symmetry.generators(n) {
        if !is_symmetry(f, &perm, &signs) {
            return Err(RecheckError::Symmetry);
        }
    }
    let expected_region = cert.symmetry.fundamental_region(space);
    let claimed = &cert.region;
    let prefix_ok = claimed.len() >= expected_region.len()
        && claimed[..expected_region.len()] == expected_region[..];
    // At most one extra halfspace, and only for even functions.
    let extra_ok = match claimed.len() - expected_region.len().min(claimed.len()) {
        0 => !cert.antipodal_pruned,
        1 => cert.antipodal_pruned && f.is_even(),
        _ => false,
    };
    if !prefix_ok || !extra_ok {
        return Err(RecheckError::RegionMismatch);
    }
    if cert.rays.len() != cert.ray_values.len() {
        return Err(RecheckError::ChamberShape(usize::MAX));
    }
    for (i, (ray, recorded)) in cert.rays.iter().zip(&cert.ray_values).enumerate() {
        if ray.len() != n || !space.contains(ray) {
            return Err(RecheckError::RayOutsideSlice(i));
        }
        let mut primitive = ray.clone();
        Rational::normalize_direction(&mut primitive);
        if &primitive != ray || ray.iter().all(|x| x.sign() == 0) {
            return Err(RecheckError::NotPrimitive(i));
        }
        let actual = f.evaluate(ray).map_err(|_| RecheckError::RayOutsideSlice(i))?;
        if &actual != recorded {
            return Err(RecheckError::RayValue {
                index: i,
                recorded: recorded.to_text(),
                actual: actual.to_text(),
            });
        }
        if actual.is_negative() {
            return Err(RecheckError::NegativeRay(i));
        }
        for h in &cert.region {
            if h.eval_unchecked(ray).is_negative() {
                return Err(RecheckError::Region { ray: i });
            }
        }
    }
    for (k, chamber) in cert.chambers.iter().enumerate() {
        if chamber.sign_vector.len() != cert.hyperplanes.len()
            || chamber.restricted_linear_form.arity() != n
        {
            return Err(RecheckError::ChamberShape(k));
        }
        for &r in &chamber.rays {
            let ray = cert.rays.get(r).ok_or(RecheckError::ChamberShape(k))?;
            for (h, &s) in cert.hyperplanes.iter().zip(&chamber.sign_vector) {
                let v = h.eval_unchecked(ray).sign();
                if v != 0 && v != s {
                    return Err(RecheckError::SignVector { chamber: k, ray: r });
                }
            }
            if chamber.restricted_linear_form.eval_unchecked(ray) != cert.ray_values[r] {
                return Err(RecheckError::RestrictedForm(k));
            }
        }
    }
    Ok(())
}

/// Checks that the witness direction lies on the slice and that the
/// function takes the recorded, strictly negative value there.
pub fn recheck_witness(w: &Witness) -> Result<(), RecheckError> {
    let actual: Rational = w
        .function
        .evaluate(&w.direction)
        .map_err(|_| RecheckError::WitnessOutsideSlice)?;
    if actual != w.value {
        return Err(RecheckError::WitnessValue {
            recorded: w.value.to_text(),
            actual: actual.to_text(),
        });
    }
    if !actual.is_negative() {
        return Err(RecheckError::WitnessNotNegative);
    }
    Ok(())
}
