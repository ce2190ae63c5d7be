//! Exact arithmetic in Q and in multi-quadratic fields Q(√d₁, √d₂).

mod descriptor;
mod element;
pub mod linalg;
pub mod rational;

pub use descriptor::FieldDescriptor;
pub use element::FieldElement;
pub use linalg::rational_kernel;
pub use rational::Rational;

/// Fixed-size vector of field elements.
pub type Vec4 = [FieldElement; 4];

pub fn dot4(a: &Vec4, b: &Vec4) -> FieldElement {
    let mut acc = &a[0] * &b[0];
    for i in 1..4 {
        acc += &(&a[i] * &b[i]);
    }
    acc
}

pub fn zero4(desc: FieldDescriptor) -> Vec4 {
    core::array::from_fn(|_| FieldElement::zero(desc))
}
