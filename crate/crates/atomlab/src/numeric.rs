//! Small numeric helpers: log-factorials, binary entropy, chi-square tail.

/// Natural log of `n!` via `lgamma`, exact to double precision.
pub fn ln_factorial(n: u64) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// Natural log of the binomial coefficient `C(n, k)`.
///
/// Returns negative infinity when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Binary entropy `h(p) = -p ln p - (1-p) ln(1-p)` in nats.
pub fn binary_entropy(p: f64) -> f64 {
    debug_assert!((-1e-12..=1.0 + 1e-12).contains(&p), "p out of range: {p}");
    let p = p.clamp(0.0, 1.0);
    let mut h = 0.0;
    if p > 0.0 {
        h -= p * p.ln();
    }
    if p < 1.0 {
        h -= (1.0 - p) * (1.0 - p).ln();
    }
    h
}

/// Log of the Poisson point mass at its own mean, `ln(k^k e^{-k} / k!)`.
///
/// Evaluates to zero at `k = 0`.
pub fn ln_poisson_at_mean(k: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let kf = k as f64;
    kf * kf.ln() - kf - ln_factorial(k)
}

/// Regularized lower incomplete gamma function `P(a, x)`.
///
/// Series expansion for `x < a + 1`, continued fraction otherwise.
pub fn regularized_gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    let ln_ga = libm::lgamma(a);
    if x < a + 1.0 {
        // series: P(a,x) = x^a e^-x / Gamma(a) * sum x^n / (a (a+1) ... (a+n))
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut n = a;
        for _ in 0..500 {
            n += 1.0;
            term *= x / n;
            sum += term;
            if term.abs() < sum.abs() * 1e-15 {
                break;
            }
        }
        sum * (a * x.ln() - x - ln_ga).exp()
    } else {
        // Lentz continued fraction for Q(a,x)
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-15 {
                break;
            }
        }
        let q = (a * x.ln() - x - ln_ga).exp() * h;
        1.0 - q
    }
}

/// CDF of the chi-square distribution with `dof` degrees of freedom.
pub fn chi_square_cdf(x: f64, dof: usize) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    regularized_gamma_p(dof as f64 / 2.0, x / 2.0)
}

/// Deterministic 64-bit FNV-1a hash, used to fingerprint spec files in
/// sampler metadata.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// SplitMix64 step, used to derive independent per-sample seeds.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-12);
        assert!((ln_factorial(20) - 2.432_902_008_176_64e18_f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn entropy_endpoints() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn chi_square_reference_values() {
        // quantile(0.999, k) tabulated values: P(X <= q) = 0.999
        for (dof, q999) in [(1, 10.828), (2, 13.816), (5, 20.515), (10, 29.588)] {
            let cdf = chi_square_cdf(q999, dof);
            assert!((cdf - 0.999).abs() < 5e-4, "dof={dof} cdf={cdf}");
        }
        // median of chi2(2) is 2 ln 2
        let med = chi_square_cdf(2.0 * std::f64::consts::LN_2, 2);
        assert!((med - 0.5).abs() < 1e-10);
    }

    #[test]
    fn poisson_mass_at_mean() {
        assert_eq!(ln_poisson_at_mean(0), 0.0);
        // ln(3^3 e^-3 / 3!) = 3 ln 3 - 3 - ln 6
        let expect = 3.0 * 3f64.ln() - 3.0 - 6f64.ln();
        assert!((ln_poisson_at_mean(3) - expect).abs() < 1e-12);
    }
}
