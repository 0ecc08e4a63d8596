//! Compensated summation.

use crate::complex::Cx;
use crate::real::Real;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone)]
pub struct Neumaier<T: Real> {
    sum: T,
    comp: T,
}

impl<T: Real> Default for Neumaier<T> {
    fn default() -> Self {
        Neumaier { sum: T::zero(), comp: T::zero() }
    }
}

impl<T: Real> Neumaier<T> {
    pub fn add(&mut self, x: T) {
        let t = self.sum.clone() + x.clone();
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp.clone() + ((self.sum.clone() - t.clone()) + x);
        } else {
            self.comp = self.comp.clone() + ((x - t.clone()) + self.sum.clone());
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum.clone() + self.comp.clone()
    }
}

/// Compensated sum of complex values, component-wise.
#[derive(Debug, Clone)]
pub struct ComplexSum<T: Real> {
    re: Neumaier<T>,
    im: Neumaier<T>,
}

impl<T: Real> Default for ComplexSum<T> {
    fn default() -> Self {
        ComplexSum { re: Neumaier::default(), im: Neumaier::default() }
    }
}

impl<T: Real> ComplexSum<T> {
    pub fn add(&mut self, z: Cx<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Cx<T> {
        Cx::new(self.re.value(), self.im.value())
    }
}
