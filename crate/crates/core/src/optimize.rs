//! Multistart golden-section search for a scalar maximum.

use crate::math;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Maximum {
    pub arg: f64,
    pub value: f64,
}

impl Maximum {
    fn consider(&mut self, arg: f64, value: f64) {
        if value > self.value {
            *self = Maximum { arg, value };
        }
    }
}

fn eval(f: &impl Fn(f64) -> f64, x: f64) -> f64 {
    let v = f(x);
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Golden-section search for a maximum of `f` on `[a, b]`, stopping once
/// the bracket is narrower than `tol`.
fn golden(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Maximum {
    let inv_phi = (math::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(f, c);
    let mut fd = eval(f, d);
    let mut best = Maximum {
        arg: a,
        value: eval(f, a),
    };
    best.consider(b, eval(f, b));
    while (b - a) > tol {
        if fc >= fd {
            best.consider(c, fc);
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(f, c);
        } else {
            best.consider(d, fd);
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(f, d);
        }
    }
    best.consider(c, fc);
    best.consider(d, fd);
    best
}

/// Maximizes `f` on `[lo, hi]`. `seeds` evenly spaced points split the
/// interval; a golden-section search runs on the two cells around every
/// seed and the overall best is returned.
pub(crate) fn maximize(f: impl Fn(f64) -> f64, lo: f64, hi: f64, seeds: usize, tol: f64) -> Maximum {
    let n = seeds.max(2);
    let step = (hi - lo) / (n - 1) as f64;
    let grid = |i: usize| if i + 1 == n { hi } else { lo + step * i as f64 };
    let mut best = Maximum {
        arg: lo,
        value: f64::NEG_INFINITY,
    };
    for i in 0..n {
        let a = grid(i.saturating_sub(1));
        let b = grid((i + 1).min(n - 1));
        let local = golden(&f, a, b, tol);
        best.consider(local.arg, local.value);
    }
    best
}
