//! Verification tasks and their reports.

mod alt4;
mod c2c4;
mod c3c3;
mod report;

pub use alt4::{verify_alt4, Alt4Options, DEFAULT_PRIMES};
pub use c2c4::{verify_c2c4, SeedChoice};
pub use c3c3::{verify_c3c3, verify_c3c3_lemma_ab, verify_c3c3_lemma_uv, verify_c3c3_theorem, C3c3Part};
pub use report::{fail, info, pass, verdict, Check, Outcome, Status, VerificationReport};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::poly::MultiPoly;
use crate::scalar::Field;

/// Fixed seed so reports are reproducible.
pub(crate) fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_d0a1)
}

/// `Some(s)` when `lhs == s * rhs` for `s` in `{1, -1}`.
pub(crate) fn sign_relation<F: Field>(lhs: &MultiPoly<F>, rhs: &MultiPoly<F>) -> Option<i8> {
    if lhs == rhs {
        Some(1)
    } else if *lhs == -rhs {
        Some(-1)
    } else {
        None
    }
}

/// Evaluates `lhs - s*rhs` at random points with small integer
/// coordinates; cheap evidence before the exact comparison.
pub(crate) fn spot_check<F: Field>(lhs: &MultiPoly<F>, rhs: &MultiPoly<F>, sign: i8, trials: usize) -> Result<bool> {
    let field = lhs.field();
    let n = lhs.ring().nvars();
    let mut rng = rng();
    for _ in 0..trials {
        let pt: Vec<F::Elem> = (0..n).map(|_| field.from_i64(rng.gen_range(-50..=50))).collect();
        let l = lhs.evaluate_at(&pt)?;
        let r = rhs.evaluate_at(&pt)?;
        let r = if sign < 0 { field.neg(&r) } else { r };
        if l != r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Short description of a nonzero residual.
pub(crate) fn residual_detail<F: Field>(r: &MultiPoly<F>) -> String {
    match r.leading_term() {
        None => "residual 0".into(),
        Some(lt) => format!("residual has {} terms, leading term {}", r.len(), lt),
    }
}
