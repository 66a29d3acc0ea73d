use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::poly::forward_owned;
use super::ratfunc::RatFunc;

/// Element of `Q(t)[w, d] / (w^2 + w + 1, d^3 - D)`, stored as the
/// coefficients of `w^i d^j` for `i < 2`, `j < 3`. `D` lives in [`Tower`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TowerElem {
    c: [[RatFunc; 3]; 2],
}

impl TowerElem {
    pub fn zero() -> Self {
        TowerElem {
            c: std::array::from_fn(|_| std::array::from_fn(|_| RatFunc::zero())),
        }
    }

    pub fn from_ratfunc(x: RatFunc) -> Self {
        Self::term(x, 0, 0)
    }

    /// `x * w^i * d^j` for `i < 2`, `j < 3`.
    pub fn term(x: RatFunc, i: usize, j: usize) -> Self {
        let mut out = Self::zero();
        out.c[i][j] = x;
        out
    }

    /// Coefficient of `w^i d^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &RatFunc {
        &self.c[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(RatFunc::is_zero)
    }

    pub fn scale(&self, x: &RatFunc) -> Self {
        TowerElem {
            c: std::array::from_fn(|i| std::array::from_fn(|j| &self.c[i][j] * x)),
        }
    }

    /// The automorphism `w -> w^2 = -1 - w` fixing `d`.
    pub fn conjugate_omega(&self) -> Self {
        // a + b w -> (a - b) - b w
        TowerElem {
            c: [
                std::array::from_fn(|j| &self.c[0][j] - &self.c[1][j]),
                std::array::from_fn(|j| -&self.c[1][j]),
            ],
        }
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..2 {
            for j in 0..3 {
                if self.c[i][j].is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                write!(f, "({})", self.c[i][j])?;
                if i == 1 {
                    f.write_str("*w")?;
                }
                if j > 0 {
                    write!(f, "*d^{j}")?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Add for &TowerElem {
    type Output = TowerElem;
    fn add(self, rhs: &TowerElem) -> TowerElem {
        TowerElem {
            c: std::array::from_fn(|i| std::array::from_fn(|j| &self.c[i][j] + &rhs.c[i][j])),
        }
    }
}

impl Sub for &TowerElem {
    type Output = TowerElem;
    fn sub(self, rhs: &TowerElem) -> TowerElem {
        TowerElem {
            c: std::array::from_fn(|i| std::array::from_fn(|j| &self.c[i][j] - &rhs.c[i][j])),
        }
    }
}

impl Neg for &TowerElem {
    type Output = TowerElem;
    fn neg(self) -> TowerElem {
        TowerElem {
            c: std::array::from_fn(|i| std::array::from_fn(|j| -&self.c[i][j])),
        }
    }
}

forward_owned!(TowerElem, Add add, Sub sub);

/// The field `Q(t)(w, d)` with `w^2 + w + 1 = 0` and `d^3 = delta_cubed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    delta_cubed: RatFunc,
}

impl Tower {
    /// `None` if `delta_cubed` is zero.
    pub fn new(delta_cubed: RatFunc) -> Option<Self> {
        (!delta_cubed.is_zero()).then_some(Tower { delta_cubed })
    }

    pub fn delta_cubed(&self) -> &RatFunc {
        &self.delta_cubed
    }

    pub fn omega(&self) -> TowerElem {
        TowerElem::term(RatFunc::one(), 1, 0)
    }

    pub fn delta(&self) -> TowerElem {
        TowerElem::term(RatFunc::one(), 0, 1)
    }

    pub fn mul(&self, x: &TowerElem, y: &TowerElem) -> TowerElem {
        // raw product indexed by w-degree 0..=2 and d-degree 0..=4
        let mut raw: [[RatFunc; 5]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| RatFunc::zero()));
        for (i, row) in x.c.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, row2) in y.c.iter().enumerate() {
                    for (l, b) in row2.iter().enumerate() {
                        if !b.is_zero() {
                            raw[i + k][j + l] = &raw[i + k][j + l] + &(a * b);
                        }
                    }
                }
            }
        }
        let mut out = TowerElem::zero();
        for (i, row) in raw.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (j, v) = if j >= 3 {
                    (j - 3, v * &self.delta_cubed)
                } else {
                    (j, v.clone())
                };
                if i == 2 {
                    // w^2 = -1 - w
                    out.c[0][j] = &out.c[0][j] - &v;
                    out.c[1][j] = &out.c[1][j] - &v;
                } else {
                    out.c[i][j] = &out.c[i][j] + &v;
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &TowerElem, k: u32) -> TowerElem {
        (0..k).fold(TowerElem::from_ratfunc(RatFunc::one()), |acc, _| self.mul(&acc, x))
    }

    /// The automorphism `d -> w d` fixing `w`.
    pub fn rotate_delta(&self, x: &TowerElem) -> TowerElem {
        let w = self.omega();
        let w2 = self.mul(&w, &w);
        let mut out = TowerElem::zero();
        for i in 0..2 {
            for j in 0..3 {
                let weight = match j {
                    0 => TowerElem::from_ratfunc(RatFunc::one()),
                    1 => w.clone(),
                    _ => w2.clone(),
                };
                let base = TowerElem::term(x.c[i][j].clone(), i, j);
                out = &out + &self.mul(&base, &weight);
            }
        }
        out
    }
}
