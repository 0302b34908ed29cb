//! Numerical dilogarithms: Li2 on the principal branch, the single-valued
//! Bloch-Wigner function D, the modified L2 with explicit branch data, real
//! volumes of Bloch elements, and the Cech cochain built from the rank-one
//! cross-ratio cocycle.
//!
//! Li2 is computed by the Bernoulli-accelerated logarithmic series after
//! reduction into the unit disc with real part at most 1/2; target accuracy
//! 1e-13 there. Test oracles (zeta value, alternating series, Clausen
//! integral) are independent of this path.

use crate::{Error, Result};
use num::complex::Complex64;
use std::f64::consts::PI;

/// Bernoulli numbers B_0, B_1, B_2, B_4, ..., B_30 (odd ones beyond B_1 are
/// zero and skipped by the series).
const BERNOULLI: [(usize, f64); 17] = [
    (0, 1.0),
    (1, -0.5),
    (2, 1.0 / 6.0),
    (4, -1.0 / 30.0),
    (6, 1.0 / 42.0),
    (8, -1.0 / 30.0),
    (10, 5.0 / 66.0),
    (12, -691.0 / 2730.0),
    (14, 7.0 / 6.0),
    (16, -3617.0 / 510.0),
    (18, 43867.0 / 798.0),
    (20, -174611.0 / 330.0),
    (22, 854513.0 / 138.0),
    (24, -236364091.0 / 2730.0),
    (26, 8553103.0 / 6.0),
    (28, -23749461029.0 / 870.0),
    (30, 8615841276005.0 / 14322.0),
];

fn li2_core(z: Complex64) -> Complex64 {
    // valid for |z| <= 1, Re z <= 1/2 (so |u| < 2 pi): the Debye series
    // Li2(z) = sum B_k u^{k+1} / (k+1)!, u = -log(1 - z)
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for &(k, b) in BERNOULLI.iter() {
        let mut fact = 1.0f64;
        for t in 1..=(k + 1) {
            fact *= t as f64;
        }
        acc += u.powi((k + 1) as i32) * (b / fact);
    }
    acc
}

/// Principal-branch dilogarithm.
pub fn li2(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if z.re == 1.0 && z.im == 0.0 {
        return Complex64::new(PI * PI / 6.0, 0.0);
    }
    let one = Complex64::new(1.0, 0.0);
    if z.norm() > 1.0 {
        // inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2
        let w = one / z;
        let log_neg = (-z).ln();
        return -li2(w) - Complex64::new(PI * PI / 6.0, 0.0) - log_neg * log_neg * 0.5;
    }
    if z.re > 0.5 {
        // reflection: Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        let w = one - z;
        return Complex64::new(PI * PI / 6.0, 0.0) - z.ln() * w.ln() - li2(w);
    }
    li2_core(z)
}

/// The Bloch-Wigner function `D(z) = Im Li2(z) + arg(1 - z) log |z|`,
/// extended by 0 to the real line.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z.im == 0.0 {
        return 0.0;
    }
    let one = Complex64::new(1.0, 0.0);
    li2(z).im + (one - z).arg() * z.norm().ln()
}

/// `L2(x) = Li2(x) + log(1-x) log(x) / 2 + (2 pi i)^2 / 24` with the two
/// logarithms shifted by the given winding numbers.
pub fn l2(x: Complex64, winding_log_x: i64, winding_log_1mx: i64) -> Result<Complex64> {
    if (x.re == 0.0 && x.im == 0.0) || (x.re == 1.0 && x.im == 0.0) {
        return Err(Error::Degenerate("L2 undefined at 0 and 1".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let log_x = x.ln() + two_pi_i * (winding_log_x as f64);
    let log_1mx = (one - x).ln() + two_pi_i * (winding_log_1mx as f64);
    let constant = two_pi_i * two_pi_i / 24.0;
    Ok(li2(x) + log_1mx * log_x * 0.5 + constant)
}

/// `sum coeff * D(arg)` of a Bloch element over complex arguments;
/// coefficients given doubled.
pub fn volume_real(terms: &[(Complex64, i64)]) -> f64 {
    terms
        .iter()
        .map(|(z, c2)| (*c2 as f64) / 2.0 * bloch_wigner(*z))
        .sum()
}

/// Projective cross-ratio over the complex numbers via 2x2 brackets of
/// homogeneous coordinates; the arguments are plain vectors in C^2.
pub fn cross_ratio_c(v: [[Complex64; 2]; 4]) -> Result<Complex64> {
    let br = |a: &[Complex64; 2], b: &[Complex64; 2]| a[0] * b[1] - a[1] * b[0];
    let d12 = br(&v[0], &v[1]);
    let d34 = br(&v[2], &v[3]);
    let d14 = br(&v[0], &v[3]);
    let d23 = br(&v[1], &v[2]);
    let den = d14 * d23;
    if den.norm() < 1e-14 {
        return Err(Error::Degenerate("coincident projective points".into()));
    }
    Ok((d12 * d34) / den)
}

/// The rank-one `C1` of four decorated flags (vectors): `{r_2}` with
/// `r_2 = -D12 D34 / (D14 D23)`.
pub fn c1_argument_sl2(v: [[Complex64; 2]; 4]) -> Result<Complex64> {
    Ok(-cross_ratio_c(v)?)
}

/// A Cech cover datum: sections over the vertices (2x2 complex matrices)
/// and a base decoration vector.
#[derive(Debug, Clone)]
pub struct CechCover {
    pub sections: Vec<[[Complex64; 2]; 2]>,
    pub base: [Complex64; 2],
}

impl CechCover {
    fn flag(&self, i: usize) -> [Complex64; 2] {
        let g = &self.sections[i];
        [
            g[0][0] * self.base[0] + g[0][1] * self.base[1],
            g[1][0] * self.base[0] + g[1][1] * self.base[1],
        ]
    }
}

/// The cochain value on a 4-simplex of the nerve: the alternating sum
/// `sum_k (-1)^k L2(C1(g_{i_1}, .., omit k, .., g_{i_5}))` with principal
/// branches.
pub fn cech_c2_cochain(cover: &CechCover, simplex: &[usize; 5]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..5 {
        let mut quad = Vec::with_capacity(4);
        for (t, &vid) in simplex.iter().enumerate() {
            if t != k {
                quad.push(cover.flag(vid));
            }
        }
        let arg = c1_argument_sl2([quad[0], quad[1], quad[2], quad[3]])?;
        let sign = if (k + 1) % 2 == 1 { -1.0 } else { 1.0 };
        acc += l2(arg, 0, 0)? * sign;
    }
    Ok(acc)
}

/// Best rational approximation p/q of `x` with denominator at most
/// `max_den`; returns (p, q, error).
pub fn rational_reconstruct(x: f64, max_den: i64) -> (i64, i64, f64) {
    let mut best = (0i64, 1i64, f64::MAX);
    for q in 1..=max_den {
        let p = (x * q as f64).round() as i64;
        let err = (x - p as f64 / q as f64).abs();
        if err < best.2 {
            best = (p, q, err);
        }
    }
    best
}

// ------------------------------------------------------------------
// independent oracles (used by tests and the acceptance suite)
// ------------------------------------------------------------------

/// `pi^2 / 6` by the partial zeta sum with Euler-Maclaurin tail correction.
pub fn zeta2_oracle() -> f64 {
    let n = 20_000usize;
    let mut s = 0.0;
    for k in 1..=n {
        s += 1.0 / (k as f64 * k as f64);
    }
    let nf = (n as f64) + 1.0;
    // tail: 1/N - 1/(2N^2) + 1/(6N^3) - 1/(30 N^5)
    s + 1.0 / nf - 1.0 / (2.0 * nf * nf) + 1.0 / (6.0 * nf * nf * nf)
        - 1.0 / (30.0 * nf.powi(5))
}

/// `-pi^2 / 12` by the alternating series, accelerated by pairing terms.
pub fn li2_minus_one_oracle() -> f64 {
    let mut s = 0.0;
    let n = 4_000_000u64;
    for k in (1..=n).step_by(2) {
        let a = 1.0 / ((k * k) as f64);
        let b = 1.0 / (((k + 1) * (k + 1)) as f64);
        s += -a + b;
    }
    s
}

/// Clausen value `Cl2(theta) = D(e^{i theta})` by exact-integral quadrature:
/// `Cl2(theta) = -int_0^theta log(2 sin(t/2)) dt`, with the endpoint
/// singularity integrated in closed form.
pub fn clausen_oracle(theta: f64) -> f64 {
    // split log(2 sin(t/2)) = log t + log(2 sin(t/2) / t); the second factor
    // is analytic on [0, theta]
    let smooth = |t: f64| {
        if t.abs() < 1e-8 {
            // series: log(1 - t^2/24 + ...)
            (-t * t / 24.0).ln_1p()
        } else {
            (2.0 * (t / 2.0).sin() / t).ln()
        }
    };
    let (nodes, weights) = gauss_legendre_64();
    let mut integral = 0.0;
    for (x, w) in nodes.iter().zip(weights.iter()) {
        // map [-1, 1] -> [0, theta]
        let t = theta * 0.5 * (x + 1.0);
        integral += w * smooth(t);
    }
    integral *= theta * 0.5;
    let endpoint = theta * theta.ln() - theta; // int_0^theta log t dt
    -(endpoint + integral)
}

/// 64-point Gauss-Legendre nodes and weights on [-1, 1], generated by Newton
/// iteration on the Legendre recurrence.
fn gauss_legendre_64() -> (Vec<f64>, Vec<f64>) {
    let n = 64usize;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn li2_special_values() {
        assert_eq!(li2(c(0.0, 0.0)), c(0.0, 0.0));
        let v = li2(c(1.0, 0.0));
        assert!((v.re - zeta2_oracle()).abs() < 1e-12);
        let v = li2(c(-1.0, 0.0));
        assert!((v.re - li2_minus_one_oracle()).abs() < 1e-12, "{v}");
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn li2_series_agreement_inside_the_disc() {
        // direct power series as oracle where it converges well
        for &z in &[c(0.3, 0.2), c(-0.4, 0.1), c(0.1, -0.45)] {
            let mut s = c(0.0, 0.0);
            let mut zp = c(1.0, 0.0);
            for n in 1..200 {
                zp *= z;
                s += zp / ((n * n) as f64);
            }
            assert!((li2(z) - s).norm() < 1e-13, "z = {z}");
        }
    }

    #[test]
    fn li2_inversion_identity() {
        // Li2(z) + Li2(1/z) = -pi^2/6 - log^2(-z)/2 off the cut
        for &z in &[c(1.7, 0.9), c(-2.3, 0.4), c(0.5, 2.0), c(-0.2, -1.4)] {
            let lhs = li2(z) + li2(c(1.0, 0.0) / z);
            let rhs = c(-PI * PI / 6.0, 0.0) - (-z).ln() * (-z).ln() * 0.5;
            assert!((lhs - rhs).norm() < 1e-10, "z = {z}");
        }
    }

    #[test]
    fn bloch_wigner_basics() {
        assert_eq!(bloch_wigner(c(0.7, 0.0)), 0.0);
        assert_eq!(bloch_wigner(c(0.0, 0.0)), 0.0);
        assert_eq!(bloch_wigner(c(1.0, 0.0)), 0.0);
        // the maximum of D, against the Clausen integral oracle
        let z = Complex64::from_polar(1.0, PI / 3.0);
        let oracle = clausen_oracle(PI / 3.0);
        assert!((oracle - 1.0149416064096536).abs() < 1e-12);
        assert!((bloch_wigner(z) - oracle).abs() < 1e-12);
    }

    #[test]
    fn bloch_wigner_functional_equations() {
        let samples = [c(0.3, 0.8), c(-1.2, 0.5), c(2.0, -0.7), c(0.1, 1.9)];
        for &z in &samples {
            let one = c(1.0, 0.0);
            assert!((bloch_wigner(z) + bloch_wigner(one / z)).abs() < 1e-10);
            assert!((bloch_wigner(z) + bloch_wigner(one - z)).abs() < 1e-10);
        }
    }

    #[test]
    fn l2_landen_value_and_branch_shifts() {
        // principal branch at 1/2: Li2(1/2) = pi^2/12 - log^2(2)/2
        let x = c(0.5, 0.0);
        let li = li2(x);
        let landen = PI * PI / 12.0 - 0.5 * (2.0f64).ln().powi(2);
        assert!((li.re - landen).abs() < 1e-13);
        let v = l2(x, 0, 0).unwrap();
        let ln_half = (0.5f64).ln();
        let expect_re = landen + 0.5 * ln_half * ln_half - 4.0 * PI * PI / 24.0;
        assert!((v.re - expect_re).abs() < 1e-12);
        // shifting log x by 2 pi i changes L2 by pi i log(1 - x)
        let shifted = l2(x, 1, 0).unwrap();
        let delta = shifted - v;
        let expect = Complex64::new(0.0, PI) * (c(1.0, 0.0) - x).ln();
        assert!((delta - expect).norm() < 1e-10);
    }

    #[test]
    fn volume_of_real_arguments_vanishes() {
        let terms = vec![(c(0.4, 0.0), 2), (c(-3.0, 0.0), 4)];
        assert_eq!(volume_real(&terms), 0.0);
    }

    #[test]
    fn figure_eight_volume_cross_check() {
        let z = Complex64::from_polar(1.0, PI / 3.0);
        let v = volume_real(&[(z, 4)]); // 2 {z}, doubled coefficient 4
        let oracle = 2.0 * clausen_oracle(PI / 3.0);
        assert!((v - oracle).abs() < 1e-10);
        assert!((v - 2.0298832128193072).abs() < 1e-9);
    }

    #[test]
    fn cross_ratio_normalization() {
        // r(inf, -1, 0, z) = z realized with homogeneous vectors
        let z = c(0.37, 1.2);
        let v = cross_ratio_c([
            [c(1.0, 0.0), c(0.0, 0.0)],
            [c(-1.0, 0.0), c(1.0, 0.0)],
            [c(0.0, 0.0), c(1.0, 0.0)],
            [z, c(1.0, 0.0)],
        ])
        .unwrap();
        assert!((v - z).norm() < 1e-14);
    }

    #[test]
    fn coincident_points_rejected() {
        let p = [c(1.0, 0.0), c(0.0, 0.0)];
        assert!(cross_ratio_c([p, p, [c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(1.0, 0.0)]]).is_err());
    }
}
