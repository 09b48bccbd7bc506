//! Compensated accumulation for the trace sums.

use num_complex::Complex64;

/// Neumaier summation of `f64` terms.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct ComplexSum {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexSum {
    pub(crate) fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `e^{2πi·num/den}` with the argument reduced exactly in integers first.
pub(crate) fn unit_phase(num: i128, den: u64) -> Complex64 {
    let den_i = den as i128;
    let r = num.rem_euclid(den_i);
    let theta = core::f64::consts::TAU * (r as f64) / (den as f64);
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// `cos(2π·num/den)` with exact integer range reduction.
pub(crate) fn cos_turns(num: i128, den: u64) -> f64 {
    let r = num.rem_euclid(den as i128);
    libm::cos(core::f64::consts::TAU * (r as f64) / (den as f64))
}
