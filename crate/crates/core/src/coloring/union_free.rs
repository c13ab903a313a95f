use crate::error::{Error, Result};

/// Ground-set bound: `ground_size <= C_UF * (delta + 1)^2 * (1 + log2 p)` for every family built here.
pub const C_UF: f64 = 4.0;

/// `p` subsets of `1..=ground_size` such that no set is covered by the union of `delta` others.
///
/// Set `c` is the graph `{(x, f(x)) : x in F_q}` of the `(c - 1)`-th polynomial of degree at most
/// `degree` over `F_q`, encoded as `x * q + f(x) + 1`. Two distinct such polynomials agree on at most
/// `degree` points and `q > delta * degree`, so `delta` other sets cover fewer than `q` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionFreeFamily {
    pub p: usize,
    pub delta: usize,
    pub q: usize,
    pub degree: usize,
    pub ground_size: usize,
}

fn is_prime(x: usize) -> bool {
    if x < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= x {
        if x.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

fn next_prime(mut x: usize) -> usize {
    while !is_prime(x) {
        x += 1;
    }
    x
}

/// `q^e >= p`, without overflow.
fn pow_reaches(q: usize, e: usize, p: usize) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc *= q as u128;
        if acc >= p as u128 {
            return true;
        }
    }
    acc >= p as u128
}

impl UnionFreeFamily {
    /// Smallest ground set over all polynomial degrees; ties go to the lower degree.
    pub fn new(p: usize, delta: usize) -> Result<Self> {
        if p < delta + 1 || p == 0 {
            return Err(Error::InvalidParameter(format!(
                "a {delta}-union-free family needs at least {} sets, got {p}",
                delta + 1
            )));
        }
        let mut best: Option<(usize, usize)> = None;
        for degree in 1.. {
            let floor = delta * degree + 1;
            if best.is_some_and(|(q, _)| floor > q) {
                break;
            }
            let mut q = next_prime(floor.max(2));
            while !pow_reaches(q, degree + 1, p) {
                q = next_prime(q + 1);
            }
            if best.is_none_or(|(bq, _)| q < bq) {
                best = Some((q, degree));
            }
            if degree >= 64 {
                break;
            }
        }
        let (q, degree) = best.expect("degree 1 always yields a field size");
        Ok(Self { p, delta, q, degree, ground_size: q * q })
    }

    /// Coefficients of the polynomial behind set `c`, constant term first.
    pub fn coefficients(&self, c: usize) -> Vec<usize> {
        debug_assert!((1..=self.p).contains(&c));
        let mut idx = c - 1;
        (0..=self.degree)
            .map(|_| {
                let digit = idx % self.q;
                idx /= self.q;
                digit
            })
            .collect()
    }

    /// `f_c(x)` for `x` in `0..q`.
    pub fn eval(&self, coeffs: &[usize], x: usize) -> usize {
        coeffs.iter().rev().fold(0, |acc, &a| (acc * x + a) % self.q)
    }

    /// Point `x` of set `c`, as an element of `1..=ground_size`.
    pub fn element(&self, x: usize, fx: usize) -> usize {
        x * self.q + fx + 1
    }

    pub fn set(&self, c: usize) -> Vec<usize> {
        let coeffs = self.coefficients(c);
        (0..self.q).map(|x| self.element(x, self.eval(&coeffs, x))).collect()
    }
}
