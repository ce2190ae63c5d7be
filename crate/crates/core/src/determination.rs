//! Whether a slope is determined, up to algebraic conjugacy, by its
//! subperiods.
//!
//! The subperiods are linear forms on the Grassmann coordinates. Together
//! with the Plücker quadric they cut out a projective variety containing the
//! slope; the slope is determined when that variety is finite. The kernel of
//! the linear forms has dimension `κ = 6 − rank`:
//!
//! * `κ = 1`: a single point.
//! * `κ = 2`: the quadric restricts to a binary form with at most two roots,
//!   unless it vanishes on the whole line.
//! * `κ = 3`: a conic in the projective plane of the kernel. It is reported
//!   as a one-parameter family with the conic's coefficients as witness.
//! * `κ ≥ 4`: higher dimensional.

use alloc::vec;
use alloc::vec::Vec;
use core::array;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::field::rational::{self, Rational};
use crate::field::{linalg, FieldDescriptor, FieldElement};
use crate::poly::QuadraticForm;
use crate::slope::{GrassmannCoords, Slope};
use crate::subperiod::{self, Subperiod};
use crate::{Error, Result};

/// The Plücker relation `G12·G34 − G13·G24 + G14·G23` as a quadratic form on
/// six coordinates.
pub fn plucker_form() -> QuadraticForm {
    let mut q = QuadraticForm::zero(6);
    q.add_monomial(0, 5, &rational::rat(1));
    q.add_monomial(1, 4, &rational::rat(-1));
    q.add_monomial(2, 3, &rational::rat(1));
    q
}

fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}

/// Linear forms on `(G12, …, G34)` from subperiods, plus the fixed Plücker
/// quadric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubperiodSystem {
    forms: Vec<[BigInt; 6]>,
}

impl SubperiodSystem {
    /// Each form is reduced to a primitive vector with positive leading entry.
    pub fn new(forms: Vec<[BigInt; 6]>) -> Result<Self> {
        let mut out = Vec::with_capacity(forms.len());
        for f in forms {
            if f.iter().all(Zero::is_zero) {
                return Err(Error::InvalidParameter("zero linear form"));
            }
            let p = rational::primitive_integer_vector(&to_rationals(&f));
            out.push(array::from_fn(|i| p[i].clone()));
        }
        Ok(SubperiodSystem { forms: out })
    }

    pub fn from_ints(forms: &[[i64; 6]]) -> Result<Self> {
        Self::new(forms.iter().map(|f| f.map(BigInt::from)).collect())
    }

    pub fn from_subperiods(subperiods: &[Subperiod]) -> Self {
        SubperiodSystem {
            forms: subperiods.iter().map(Subperiod::linear_form).collect(),
        }
    }

    pub fn forms(&self) -> &[[BigInt; 6]] {
        &self.forms
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self.forms.iter().map(|f| f.to_vec()).collect();
        linalg::integer_rank(&rows)
    }

    /// Primitive integer basis of the common kernel.
    pub fn kernel(&self) -> Vec<[BigInt; 6]> {
        let rows: Vec<Vec<BigInt>> = self.forms.iter().map(|f| f.to_vec()).collect();
        linalg::integer_rows_kernel(&rows, 6)
            .into_iter()
            .map(|v| array::from_fn(|i| v[i].clone()))
            .collect()
    }

    /// Whether `g` satisfies every linear form and the Plücker relation.
    pub fn is_satisfied_by(&self, g: &GrassmannCoords) -> bool {
        g.plucker_residual().is_zero()
            && self
                .forms
                .iter()
                .all(|f| subperiod::evaluate_form(f, g.coords()).is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Determined,
    OneParameterFamily,
    HigherDimensional,
    FewerThanThreeTypes,
}

/// The kernel of the linear forms and the Plücker form restricted to it: a
/// point `Σ tₖ wₖ` is on the family iff `conic(t) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyWitness {
    pub kernel: Vec<[BigInt; 6]>,
    pub conic: QuadraticForm,
}

impl FamilyWitness {
    /// Whether `g` lies in the kernel span and on the restricted quadric.
    pub fn contains(&self, g: &GrassmannCoords) -> bool {
        // Forms vanishing on the span cut it out exactly.
        let rows: Vec<Vec<BigInt>> = self.kernel.iter().map(|w| w.to_vec()).collect();
        let in_span = linalg::integer_rows_kernel(&rows, 6).into_iter().all(|f| {
            let f: [BigInt; 6] = array::from_fn(|i| f[i].clone());
            subperiod::evaluate_form(&f, g.coords()).is_zero()
        });
        in_span && g.plucker_residual().is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// Real projective solutions, normalized, when determined.
    pub solutions: Vec<GrassmannCoords>,
    /// Solutions over C \ R (a binary form with negative discriminant).
    pub nonreal_solutions: usize,
    pub family: Option<FamilyWitness>,
    pub rank: usize,
}

impl Verdict {
    fn new(status: Status, rank: usize) -> Self {
        Verdict {
            status,
            solutions: Vec::new(),
            nonreal_solutions: 0,
            family: None,
            rank,
        }
    }

    pub fn is_determined(&self) -> bool {
        self.status == Status::Determined
    }
}

/// Decides the dimension of `{linear forms = 0} ∩ {Plücker = 0}` over the
/// algebraic closure and lists the solutions when it is finite.
pub fn determined_by_subperiods(sys: &SubperiodSystem) -> Verdict {
    if sys.forms.is_empty() {
        return Verdict::new(Status::HigherDimensional, 0);
    }
    let rank = sys.rank();
    let kernel = sys.kernel();
    let basis: Vec<Vec<Rational>> = kernel.iter().map(|w| to_rationals(w)).collect();
    let conic = plucker_form().restrict(&basis);
    let witness = || {
        Some(FamilyWitness {
            kernel: kernel.clone(),
            conic: conic.clone(),
        })
    };
    match kernel.len() {
        0 => Verdict::new(Status::Determined, rank),
        1 => {
            let mut v = Verdict::new(Status::Determined, rank);
            let g = GrassmannCoords::new(
                kernel[0]
                    .each_ref()
                    .map(|x| FieldElement::from_bigint(FieldDescriptor::RATIONAL, x)),
            );
            if let Ok(g) = g {
                v.solutions.push(g.normalized());
            }
            v
        }
        2 => match solve_pencil(&kernel[0], &kernel[1]) {
            Err(_) => Verdict {
                family: witness(),
                ..Verdict::new(Status::OneParameterFamily, rank)
            },
            Ok(p) => {
                let mut v = Verdict::new(Status::Determined, rank);
                match &p.roots {
                    PencilRoots::Real(roots) => {
                        v.solutions = roots.iter().map(|r| p.point(r)).collect();
                    }
                    PencilRoots::NoReal => v.nonreal_solutions = 2,
                }
                v
            }
        },
        3 if !conic.is_zero() => Verdict {
            family: witness(),
            ..Verdict::new(Status::OneParameterFamily, rank)
        },
        _ => Verdict::new(Status::HigherDimensional, rank),
    }
}

/// Roots of a binary quadratic form, as projective points `(α : β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PencilRoots {
    Real(Vec<[FieldElement; 2]>),
    NoReal,
}

/// The Plücker form restricted to `α w₁ + β w₂`: `Aα² + Bαβ + Cβ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub w1: [BigInt; 6],
    pub w2: [BigInt; 6],
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub roots: PencilRoots,
}

impl Pencil {
    /// The normalized Grassmann point `α w₁ + β w₂`.
    pub fn point(&self, root: &[FieldElement; 2]) -> GrassmannCoords {
        let g =
            array::from_fn(|i| &root[0].scale_int(&self.w1[i]) + &root[1].scale_int(&self.w2[i]));
        GrassmannCoords::new(g)
            .expect("roots satisfy Plücker")
            .normalized()
    }
}

/// Restricts the Plücker form to the pencil spanned by `w1, w2` and solves it.
pub fn solve_pencil(w1: &[BigInt; 6], w2: &[BigInt; 6]) -> Result<Pencil> {
    if linalg::integer_rank(&[w1.to_vec(), w2.to_vec()]) < 2 {
        return Err(Error::DependentSubperiods);
    }
    let p = plucker_form();
    let (x, y) = (to_rationals(w1), to_rationals(w2));
    let a = p.eval(&x);
    let c = p.eval(&y);
    let b = p.coefficient_between(&x, &y);
    let roots = binary_roots(&a, &b, &c)?;
    Ok(Pencil {
        w1: w1.clone(),
        w2: w2.clone(),
        a,
        b,
        c,
        roots,
    })
}

/// Projective roots of `Aα² + Bαβ + Cβ²`, over `Q(√(B² − 4AC))`.
pub fn binary_roots(a: &Rational, b: &Rational, c: &Rational) -> Result<PencilRoots> {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::ZeroForm);
    }
    let q = FieldDescriptor::RATIONAL;
    let r = |x: Rational| FieldElement::from_rational(q, x);
    let one = Rational::from_integer(1.into());
    if a.is_zero() {
        // β(Bα + Cβ)
        let mut out = vec![[r(one.clone()), r(Rational::zero())]];
        if !b.is_zero() {
            out.push([r(-c.clone()), r(b.clone())]);
        }
        return Ok(PencilRoots::Real(out));
    }
    let disc = b * b - rational::rat(4) * a * c;
    let two_a = rational::rat(2) * a;
    if disc.is_negative() {
        return Ok(PencilRoots::NoReal);
    }
    if disc.is_zero() {
        return Ok(PencilRoots::Real(vec![[r(-b.clone()), r(two_a)]]));
    }
    let (s, d) = rational::rational_square_free(&disc);
    if d == BigInt::from(1) {
        return Ok(PencilRoots::Real(vec![
            [r(-b + &s), r(two_a.clone())],
            [r(-b - &s), r(two_a)],
        ]));
    }
    let d = d
        .to_i64()
        .ok_or(Error::InvalidDescriptor("radicand too large"))?;
    let k = FieldDescriptor::quadratic(d)?;
    let root = |sign: i64| {
        let coeffs = vec![-b.clone(), &s * rational::rat(sign)];
        [
            FieldElement::from_coeffs(k, coeffs).expect("two coefficients"),
            FieldElement::from_rational(k, two_a.clone()),
        ]
    };
    Ok(PencilRoots::Real(vec![root(1), root(-1)]))
}

/// Whether two Grassmann points are entrywise algebraic conjugates.
pub fn are_conjugate(g1: &GrassmannCoords, g2: &GrassmannCoords) -> bool {
    g1.conjugate_slopes().iter().any(|c| c.same_point(g2))
}

/// The quadratic (or rational) field containing all normalized solution
/// coordinates, if there is a single one.
pub fn common_quadratic_field(solutions: &[GrassmannCoords]) -> Option<FieldDescriptor> {
    let mut field = FieldDescriptor::RATIONAL;
    for g in solutions {
        let g = g.clone().normalized();
        for x in g.coords() {
            field = field.join(&x.minimal_descriptor())?;
        }
    }
    (field.rank() <= 1).then_some(field)
}

/// Subperiods, their types and the resulting verdict for one slope.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub subperiods: Vec<Subperiod>,
    pub types: usize,
    pub system: SubperiodSystem,
    pub verdict: Verdict,
}

/// Full analysis of a nondegenerate slope. Fewer than three subperiod types
/// short-circuits to [`Status::FewerThanThreeTypes`].
pub fn analyze(s: &Slope) -> Result<Analysis> {
    let subperiods = subperiod::analyze(s)?;
    let types = subperiod::count_types(&subperiods);
    let system = SubperiodSystem::from_subperiods(&subperiods);
    let verdict = if types < 3 {
        Verdict::new(Status::FewerThanThreeTypes, system.rank())
    } else {
        determined_by_subperiods(&system)
    };
    Ok(Analysis {
        subperiods,
        types,
        system,
        verdict,
    })
}
