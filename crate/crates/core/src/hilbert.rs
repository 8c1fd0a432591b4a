//! Closed-form Hilbert series used as oracles for computed modules.

use crate::series::{one_minus_t_pow, tpoly_mul, ClosedForm, GradedSeries, TPoly};
use crate::specht::{hooks, standard_tableaux};

/// `H_λ(t) = Π_{s ∈ λ} (1 - t^{hook(s)})`.
pub fn hook_product(lambda: &[usize]) -> TPoly {
    hooks(lambda)
        .iter()
        .flatten()
        .fold(vec![1], |acc, &h| tpoly_mul(&acc, &one_minus_t_pow(h)))
}

/// `(t)_n = (1 - t)(1 - t^2) ... (1 - t^n)`.
pub fn t_pochhammer(n: u32) -> TPoly {
    (1..=n).fold(vec![1], |acc, k| tpoly_mul(&acc, &one_minus_t_pow(k)))
}

pub use crate::specht::n_lambda;

fn substitute(p: &[i64], k: u32) -> TPoly {
    crate::series::substitute_power(p, k)
}

/// Hilbert series of `L` for `G(m,1,n)` and `τ` the pullback of the Specht
/// module `S_λ`: `dim τ · H_λ(t^m) / (1-t)^n` for `ħ = 0`, with `t^{mp}` in
/// place of `t^m` for `ħ = 1`.
pub fn closed_hilbert_wreath(lambda: &[usize], m: u32, n: usize, hbar: u8, p: u64) -> GradedSeries {
    let k = if hbar == 1 { m * p as u32 } else { m };
    let dim = standard_tableaux(lambda).len() as i64;
    let num: TPoly = substitute(&hook_product(lambda), k).iter().map(|c| c * dim).collect();
    finite(ClosedForm {
        numerator: num,
        denominator: vec![1; n],
    })
}

/// Trivial-representation series for `G(m,r,n)`:
/// `(1-t^m)(1-t^{2m})...(1-t^{(n-1)m})(1-t^{nm/r}) / (1-t)^n`.
pub fn remark_series(m: u32, r: u32, n: usize) -> GradedSeries {
    let mut num = vec![1];
    for j in 1..n as u32 {
        num = tpoly_mul(&num, &one_minus_t_pow(j * m));
    }
    num = tpoly_mul(&num, &one_minus_t_pow(n as u32 * m / r));
    finite(ClosedForm {
        numerator: num,
        denominator: vec![1; n],
    })
}

fn finite(closed: ClosedForm) -> GradedSeries {
    let simple = closed.simplify();
    let n = simple.numerator.len().saturating_sub(1);
    GradedSeries {
        coeffs: closed.expand(n),
        closed: Some(closed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_examples() {
        let s = closed_hilbert_wreath(&[2], 2, 2, 0, 7);
        assert_eq!(s.coeffs, vec![1, 2, 2, 2, 1]);
        assert_eq!(s.coeffs, tpoly_mul(&[1, 1], &[1, 1, 1, 1]));
        assert_eq!(closed_hilbert_wreath(&[1], 5, 1, 0, 7).coeffs, vec![1; 5]);
        assert_eq!(closed_hilbert_wreath(&[2], 2, 2, 1, 7).total(), 14 * 28);
        // dim τ = 2 for λ = (2,1)
        assert_eq!(closed_hilbert_wreath(&[2, 1], 1, 3, 0, 7).total(), 2 * 3);
    }

    #[test]
    fn remark_matches_dihedral() {
        for m in 2..8u32 {
            let want = tpoly_mul(&[1, 1], &vec![1; m as usize]);
            assert_eq!(remark_series(m, m, 2).coeffs, want);
        }
        assert_eq!(remark_series(3, 3, 1).coeffs, vec![1]);
        assert_eq!(remark_series(3, 1, 1).coeffs, vec![1, 1, 1]);
    }

    #[test]
    fn helpers() {
        assert_eq!(t_pochhammer(2), vec![1, -1, -1, 1]);
        assert_eq!(n_lambda(&[2, 1, 1]), 3);
        assert_eq!(hook_product(&[2]), tpoly_mul(&one_minus_t_pow(1), &one_minus_t_pow(2)));
    }
}
