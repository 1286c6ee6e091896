use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::qpoly::{q, QPoly, Q};

/// Gaussian rational.
#[derive(Debug, Clone)]
struct GQ {
    re: Q,
    im: Q,
}

impl GQ {
    fn from_complex(z: Complex64) -> Option<GQ> {
        Some(GQ {
            re: Q::from_float(z.re)?,
            im: Q::from_float(z.im)?,
        })
    }

    fn mul(&self, o: &GQ) -> GQ {
        GQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GQ) -> GQ {
        GQ {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    fn div(&self, o: &GQ) -> Option<GQ> {
        let n = o.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let conj = GQ {
            re: o.re.clone(),
            im: -o.im.clone(),
        };
        let m = self.mul(&conj);
        Some(GQ {
            re: m.re / &n,
            im: m.im / &n,
        })
    }

    fn to_complex(&self) -> Option<Complex64> {
        Some(Complex64::new(self.re.to_f64()?, self.im.to_f64()?))
    }
}

/// Newton steps evaluated exactly, rounded back to doubles.
fn refine(p: &QPoly, dp: &QPoly, z: Complex64) -> Complex64 {
    let mut z = z;
    for _ in 0..3 {
        let Some(e) = GQ::from_complex(z) else {
            return z;
        };
        let Some(next) = eval_exact(p, &e)
            .div(&eval_exact(dp, &e))
            .and_then(|step| e.sub(&step).to_complex())
        else {
            return z;
        };
        if next == z {
            break;
        }
        z = next;
    }
    z
}

fn eval_exact(p: &QPoly, z: &GQ) -> GQ {
    p.coeffs().iter().rev().fold(
        GQ {
            re: Q::zero(),
            im: Q::zero(),
        },
        |acc, c| {
            let m = acc.mul(z);
            GQ {
                re: m.re + c,
                im: m.im,
            }
        },
    )
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, a| acc * z + a)
}

/// All roots of a polynomial with complex coefficients (ascending, nonzero
/// leading term) by Durand-Kerner iteration.
pub fn durand_kerner(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    let radius = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32) * radius.min(1e3) / 2.0)
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let step = horner(&monic, z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// A root certified to lie within `radius` of `value`.
#[derive(Debug, Clone)]
pub struct IsolatedRoot {
    pub value: Complex64,
    pub radius: f64,
}

/// Isolates the roots of `p` (square-free, degree at least one). The
/// inclusion radii are exact evaluations of `n |p(z_i)| / |lc ∏ (z_i - z_j)|`;
/// pairwise disjoint discs each hold exactly one root.
pub fn isolate(p: &QPoly) -> Option<Vec<IsolatedRoot>> {
    let monic = p.monic();
    let n = monic.degree()?;
    let c: Vec<Complex64> = monic
        .coeffs()
        .iter()
        .map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    if c.iter().any(|z| !z.re.is_finite()) {
        return None;
    }
    let dp = monic.derivative();
    let approx: Vec<Complex64> = durand_kerner(&c)
        .into_iter()
        .map(|z| refine(&monic, &dp, z))
        .collect();
    let exact: Vec<GQ> = approx
        .iter()
        .map(|&z| GQ::from_complex(z))
        .collect::<Option<_>>()?;
    let nn = q(n as i64);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let mut prod = q(1);
        for j in 0..n {
            if j != i {
                prod *= exact[i].sub(&exact[j]).norm_sqr();
            }
        }
        if prod.is_zero() {
            return None;
        }
        let r2 = eval_exact(&monic, &exact[i]).norm_sqr() * &nn * &nn / prod;
        radii.push(r2.to_f64()?.sqrt() * (1.0 + 1e-9));
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = exact[i].sub(&exact[j]).norm_sqr().to_f64()?.sqrt() * (1.0 - 1e-9);
            if radii[i] + radii[j] >= d {
                return None;
            }
        }
    }
    Some(
        approx
            .into_iter()
            .zip(radii)
            .map(|(value, radius)| IsolatedRoot { value, radius })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolates_cyclotomic_roots() {
        // x^4 + 1
        let p = QPoly::new(vec![q(1), q(0), q(0), q(0), q(1)]);
        let roots = isolate(&p).unwrap();
        assert_eq!(roots.len(), 4);
        for r in roots {
            assert!((r.value.powu(4) + 1.0).norm() < 1e-12);
            assert!(r.radius < 1e-12);
        }
    }

    #[test]
    fn rejects_repeated_roots() {
        let p = QPoly::new(vec![q(1), q(-2), q(1)]);
        assert!(isolate(&p).is_none());
    }
}
