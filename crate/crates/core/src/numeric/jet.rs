//! Forward-mode automatic differentiation in the three coordinates
//! (x, y, p).
//!
//! `Jet1` carries a value and its gradient; `Jet2` additionally carries the
//! Hessian, which is symmetric by construction. There is no tape: every
//! arithmetic operation propagates the derivatives directly.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet1 {
    pub v: f64,
    pub g: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub g: [f64; 3],
    pub h: [[f64; 3]; 3],
}

impl Jet1 {
    pub fn constant(v: f64) -> Self {
        Jet1 { v, g: [0.0; 3] }
    }

    pub fn var(k: usize, v: f64) -> Self {
        let mut g = [0.0; 3];
        g[k] = 1.0;
        Jet1 { v, g }
    }

    fn chain(self, f: f64, df: f64) -> Jet1 {
        Jet1 {
            v: f,
            g: self.g.map(|gi| df * gi),
        }
    }

    pub fn exp(self) -> Jet1 {
        let e = self.v.exp();
        self.chain(e, e)
    }

    pub fn sin(self) -> Jet1 {
        self.chain(self.v.sin(), self.v.cos())
    }

    pub fn cos(self) -> Jet1 {
        self.chain(self.v.cos(), -self.v.sin())
    }

    pub fn tan(self) -> Jet1 {
        let c = self.v.cos();
        self.chain(self.v.tan(), 1.0 / (c * c))
    }

    pub fn tanh(self) -> Jet1 {
        let t = self.v.tanh();
        self.chain(t, 1.0 - t * t)
    }

    pub fn sqrt(self) -> Jet1 {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r)
    }

    pub fn recip(self) -> Jet1 {
        self.chain(1.0 / self.v, -1.0 / (self.v * self.v))
    }

    pub fn powi(self, n: i32) -> Jet1 {
        self.chain(self.v.powi(n), n as f64 * self.v.powi(n - 1))
    }
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(self, o: Jet1) -> Jet1 {
        Jet1 {
            v: self.v + o.v,
            g: [self.g[0] + o.g[0], self.g[1] + o.g[1], self.g[2] + o.g[2]],
        }
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(self, o: Jet1) -> Jet1 {
        Jet1 {
            v: self.v - o.v,
            g: [self.g[0] - o.g[0], self.g[1] - o.g[1], self.g[2] - o.g[2]],
        }
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(self) -> Jet1 {
        Jet1 {
            v: -self.v,
            g: self.g.map(|x| -x),
        }
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, o: Jet1) -> Jet1 {
        let mut g = [0.0; 3];
        for k in 0..3 {
            g[k] = self.g[k] * o.v + self.v * o.g[k];
        }
        Jet1 { v: self.v * o.v, g }
    }
}

impl Div for Jet1 {
    type Output = Jet1;
    fn div(self, o: Jet1) -> Jet1 {
        self * o.recip()
    }
}

impl Mul<f64> for Jet1 {
    type Output = Jet1;
    fn mul(self, c: f64) -> Jet1 {
        Jet1 {
            v: self.v * c,
            g: self.g.map(|x| x * c),
        }
    }
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        Jet2 {
            v,
            g: [0.0; 3],
            h: [[0.0; 3]; 3],
        }
    }

    pub fn var(k: usize, v: f64) -> Self {
        let mut g = [0.0; 3];
        g[k] = 1.0;
        Jet2 {
            v,
            g,
            h: [[0.0; 3]; 3],
        }
    }

    /// Drops the Hessian.
    pub fn jet1(&self) -> Jet1 {
        Jet1 {
            v: self.v,
            g: self.g,
        }
    }

    /// The k-th first partial as a differentiable quantity: its gradient is
    /// the k-th Hessian row.
    pub fn partial_jet1(&self, k: usize) -> Jet1 {
        Jet1 {
            v: self.g[k],
            g: self.h[k],
        }
    }

    fn chain(self, f: f64, df: f64, ddf: f64) -> Jet2 {
        let mut h = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                h[i][j] = df * self.h[i][j] + ddf * self.g[i] * self.g[j];
            }
        }
        Jet2 {
            v: f,
            g: self.g.map(|gi| df * gi),
            h,
        }
    }

    pub fn exp(self) -> Jet2 {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn sin(self) -> Jet2 {
        self.chain(self.v.sin(), self.v.cos(), -self.v.sin())
    }

    pub fn cos(self) -> Jet2 {
        self.chain(self.v.cos(), -self.v.sin(), -self.v.cos())
    }

    pub fn tan(self) -> Jet2 {
        let t = self.v.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn tanh(self) -> Jet2 {
        let t = self.v.tanh();
        let sech2 = 1.0 - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }

    pub fn sqrt(self) -> Jet2 {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * r * r))
    }

    pub fn recip(self) -> Jet2 {
        let inv = 1.0 / self.v;
        self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)
    }

    pub fn powi(self, n: i32) -> Jet2 {
        let n_f = n as f64;
        self.chain(
            self.v.powi(n),
            n_f * self.v.powi(n - 1),
            n_f * (n_f - 1.0) * self.v.powi(n - 2),
        )
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        let mut out = self;
        out.v += o.v;
        for i in 0..3 {
            out.g[i] += o.g[i];
            for j in 0..3 {
                out.h[i][j] += o.h[i][j];
            }
        }
        out
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        let mut out = self;
        out.v = -out.v;
        for i in 0..3 {
            out.g[i] = -out.g[i];
            for j in 0..3 {
                out.h[i][j] = -out.h[i][j];
            }
        }
        out
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let mut g = [0.0; 3];
        let mut h = [[0.0; 3]; 3];
        for i in 0..3 {
            g[i] = self.g[i] * o.v + self.v * o.g[i];
            for j in 0..3 {
                h[i][j] = self.h[i][j] * o.v
                    + self.g[i] * o.g[j]
                    + self.g[j] * o.g[i]
                    + self.v * o.h[i][j];
            }
        }
        Jet2 {
            v: self.v * o.v,
            g,
            h,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, c: f64) -> Jet2 {
        let mut out = self;
        out.v *= c;
        for i in 0..3 {
            out.g[i] *= c;
            for j in 0..3 {
                out.h[i][j] *= c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(f: impl Fn([Jet2; 3]) -> Jet2, x: f64, y: f64, p: f64) -> Jet2 {
        f([Jet2::var(0, x), Jet2::var(1, y), Jet2::var(2, p)])
    }

    fn sample_val(f: &impl Fn([Jet2; 3]) -> Jet2, pt: [f64; 3]) -> f64 {
        f([
            Jet2::constant(pt[0]),
            Jet2::constant(pt[1]),
            Jet2::constant(pt[2]),
        ])
        .v
    }

    fn check_against_fd(f: impl Fn([Jet2; 3]) -> Jet2, pt: [f64; 3]) {
        let jet = sample(&f, pt[0], pt[1], pt[2]);
        let h = 1e-5;
        for k in 0..3 {
            let mut up = pt;
            let mut dn = pt;
            up[k] += h;
            dn[k] -= h;
            let fd = (sample_val(&f, up) - sample_val(&f, dn)) / (2.0 * h);
            let scale = 1.0 + fd.abs();
            assert!(
                (jet.g[k] - fd).abs() / scale < 1e-6,
                "grad[{k}]: ad {} vs fd {}",
                jet.g[k],
                fd
            );
        }
        for i in 0..3 {
            for j in 0..3 {
                let mut pp = pt;
                let mut pm = pt;
                let mut mp = pt;
                let mut mm = pt;
                pp[i] += h;
                pp[j] += h;
                pm[i] += h;
                pm[j] -= h;
                mp[i] -= h;
                mp[j] += h;
                mm[i] -= h;
                mm[j] -= h;
                let fd = (sample_val(&f, pp) - sample_val(&f, pm) - sample_val(&f, mp)
                    + sample_val(&f, mm))
                    / (4.0 * h * h);
                let scale = 1.0 + fd.abs();
                assert!(
                    (jet.h[i][j] - fd).abs() / scale < 1e-4,
                    "hess[{i}][{j}]: ad {} vs fd {}",
                    jet.h[i][j],
                    fd
                );
                assert!((jet.h[i][j] - jet.h[j][i]).abs() < 1e-14, "symmetry");
            }
        }
    }

    #[test]
    fn composite_functions_match_finite_differences() {
        check_against_fd(|[x, y, p]| x * y * p + p.powi(3) * Jet2::constant(0.5), [0.3, -0.7, 1.2]);
        check_against_fd(|[x, y, p]| (x * y).exp() * p.sin() - y.tanh(), [0.2, 0.4, 0.9]);
        check_against_fd(
            |[x, y, p]| (Jet2::constant(2.0) - p * p * Jet2::constant(0.3)).sqrt() * (y * Jet2::constant(0.5)).tan() + x.recip(),
            [0.8, 0.6, 1.1],
        );
        check_against_fd(|[x, y, p]| (x + y * p) / (Jet2::constant(1.5) + p * p), [0.1, 0.5, -0.4]);
    }

    #[test]
    fn partial_jet_extracts_hessian_rows() {
        let f = |[x, y, p]: [Jet2; 3]| x * x * y + p * y;
        let jet = sample(f, 2.0, 3.0, 5.0);
        // d/dx = 2xy -> at (2,3,5): 12; gradient of that is (2y, 2x, 0)
        let px = jet.partial_jet1(0);
        assert!((px.v - 12.0).abs() < 1e-12);
        assert!((px.g[0] - 6.0).abs() < 1e-12);
        assert!((px.g[1] - 4.0).abs() < 1e-12);
        assert!(px.g[2].abs() < 1e-12);
    }

    #[test]
    fn jet1_basics() {
        let x = Jet1::var(0, 2.0);
        let p = Jet1::var(2, 3.0);
        let f = x * p + p.powi(2);
        assert!((f.v - 15.0).abs() < 1e-12);
        assert!((f.g[0] - 3.0).abs() < 1e-12);
        assert!((f.g[2] - 8.0).abs() < 1e-12);
    }
}
