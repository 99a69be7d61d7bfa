use crate::error::{Error, Result};

/// A sign-changing bracket for a scalar function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    /// Evaluate `g` at both ends and check the bracket.
    pub fn new<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64) -> Result<Self> {
        let b = RootBracket {
            lo,
            hi,
            f_lo: g(lo),
            f_hi: g(hi),
        };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        let ordered = self.lo < self.hi;
        let opposite = self.f_lo == 0.0 || self.f_hi == 0.0 || (self.f_lo < 0.0) != (self.f_hi < 0.0);
        if ordered && opposite && self.f_lo.is_finite() && self.f_hi.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidBracket {
                lo: self.lo,
                hi: self.hi,
                f_lo: self.f_lo,
                f_hi: self.f_hi,
            })
        }
    }
}

/// Brent's method: inverse quadratic interpolation and secant steps with a
/// bisection fallback, so convergence is guaranteed for any valid bracket.
/// Stops once the bracket is narrower than `tol`.
pub fn find_root_bracketed<G: Fn(f64) -> f64>(g: G, bracket: RootBracket, tol: f64) -> Result<f64> {
    bracket.validate()?;
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..500 {
        if (fb < 0.0) == (fc < 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = g(b);
        if !fb.is_finite() {
            return Err(Error::domain(format!("root function not finite at {b}")));
        }
    }
    Ok(b)
}
