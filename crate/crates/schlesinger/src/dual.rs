//! Forward-mode dual numbers over complex scalars: value plus first-order
//! sensitivity.

use num_complex::Complex64 as C;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: C,
    pub d: C,
}

impl Dual {
    pub fn new(v: C, d: C) -> Self {
        Dual { v, d }
    }

    pub fn constant(v: C) -> Self {
        Dual { v, d: C::new(0.0, 0.0) }
    }

    /// The independent variable: derivative one.
    pub fn var(v: C) -> Self {
        Dual { v, d: C::new(1.0, 0.0) }
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        Dual { v: r, d: -self.d * r * r }
    }
}

impl From<C> for Dual {
    fn from(v: C) -> Self {
        Dual::constant(v)
    }
}

impl From<f64> for Dual {
    fn from(v: f64) -> Self {
        Dual::constant(C::new(v, 0.0))
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}

impl Div for Dual {
    type Output = Dual;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Dual) -> Dual {
        self * o.recip()
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

macro_rules! scalar_ops {
    ($t:ty) => {
        impl Add<$t> for Dual {
            type Output = Dual;
            fn add(self, o: $t) -> Dual {
                self + Dual::from(o)
            }
        }
        impl Sub<$t> for Dual {
            type Output = Dual;
            fn sub(self, o: $t) -> Dual {
                self - Dual::from(o)
            }
        }
        impl Mul<$t> for Dual {
            type Output = Dual;
            fn mul(self, o: $t) -> Dual {
                Dual { v: self.v * o, d: self.d * o }
            }
        }
        impl Div<$t> for Dual {
            type Output = Dual;
            fn div(self, o: $t) -> Dual {
                Dual { v: self.v / o, d: self.d / o }
            }
        }
        impl Add<Dual> for $t {
            type Output = Dual;
            fn add(self, o: Dual) -> Dual {
                Dual::from(self) + o
            }
        }
        impl Sub<Dual> for $t {
            type Output = Dual;
            fn sub(self, o: Dual) -> Dual {
                Dual::from(self) - o
            }
        }
        impl Mul<Dual> for $t {
            type Output = Dual;
            fn mul(self, o: Dual) -> Dual {
                o * self
            }
        }
        impl Div<Dual> for $t {
            type Output = Dual;
            fn div(self, o: Dual) -> Dual {
                Dual::from(self) / o
            }
        }
    };
}

scalar_ops!(f64);
scalar_ops!(C);
