//! Rational extensions of the harmonic oscillator: the Schrödinger operator
//! attached to a Maya diagram, its exact eigenfunctions, and the differential
//! operators (intertwiners, ladders, annihilators) connecting extensions.

use crate::diffop::LinearDiffOp;
use crate::error::CoreError;
use crate::exppoly::ExpPolyFn;
use crate::hermite::normalized_pseudo_wronskian;
use crate::maya::{IndexSet, MayaDiagram};
use crate::poly::{univar, x, MultiPoly, Var};
use crate::ratfn::{determinant, RationalFn};
use crate::scalar::{int, rat, Rat};

/// A Schrödinger operator `-d^2/dx^2 + U(x)` whose potential is the harmonic
/// well plus a rational correction determined by a Maya diagram.
#[derive(Debug, Clone)]
pub struct RationalExtension {
    diagram: MayaDiagram,
    dressed: MultiPoly,
    potential: RationalFn,
}

impl RationalExtension {
    pub fn new(diagram: MayaDiagram) -> Self {
        let dressed = normalized_pseudo_wronskian(&diagram);
        let sigma = diagram.index();
        let h = &dressed;
        let dh = h.derivative(Var::X);
        let ddh = dh.derivative(Var::X);
        // U = x^2 + 2*sigma + 2 (h'/h)^2 - 2 h''/h, assembled over h^2.
        let well = x().pow(2).add(&MultiPoly::constant(int(2 * sigma)));
        let num = well
            .mul(&h.mul(h))
            .add(&dh.mul(&dh).mul_scalar(&int(2)))
            .sub(&ddh.mul(h).mul_scalar(&int(2)));
        let potential = RationalFn::new(num, h.mul(h));
        RationalExtension {
            diagram,
            dressed,
            potential,
        }
    }

    pub fn from_partition(lambda: &crate::partition::Partition) -> Self {
        Self::new(MayaDiagram::from_partition(lambda))
    }

    pub fn diagram(&self) -> &MayaDiagram {
        &self.diagram
    }

    /// Index of the underlying diagram; the constant `2 * index` appears in
    /// the potential and shifts the whole spectrum.
    pub fn index(&self) -> i64 {
        self.diagram.index()
    }

    /// The polynomial whose square divides the rational part of the potential.
    pub fn dressed_polynomial(&self) -> &MultiPoly {
        &self.dressed
    }

    pub fn potential(&self) -> &RationalFn {
        &self.potential
    }

    /// True when the potential has no poles on the real line.
    pub fn is_regular(&self) -> bool {
        self.diagram.is_regular()
    }

    /// The operator `-D^2 + U` as a linear differential operator.
    pub fn hamiltonian(&self) -> LinearDiffOp {
        LinearDiffOp::new(vec![
            self.potential.clone(),
            RationalFn::zero(),
            RationalFn::constant(int(-1)),
        ])
    }

    pub fn eigenvalue(&self, m: i64) -> i64 {
        2 * m + 1
    }

    /// Exact eigenfunction labelled by an integer: Gaussian-decaying when the
    /// label is outside the diagram, Gaussian-growing (a formal eigenfunction)
    /// when the label is a member.
    pub fn eigenfunction(&self, m: i64) -> ExpPolyFn {
        let sign = if self.diagram.contains(m) {
            rat(1, 2)
        } else {
            rat(-1, 2)
        };
        let flipped = normalized_pseudo_wronskian(&self.diagram.flip(m));
        let body = RationalFn::new(flipped, self.dressed.clone());
        ExpPolyFn::new(x().pow(2).mul_scalar(&sign), body).expect("quadratic exponent")
    }

    /// Monic operator of order `|kernel|` annihilating exactly the given
    /// eigenfunctions, built by expanding a bordered Wronskian determinant
    /// along its last column. It intertwines this extension with the one
    /// whose diagram has the kernel sites flipped.
    pub fn intertwiner(&self, kernel: &IndexSet) -> LinearDiffOp {
        let p = kernel.len();
        if p == 0 {
            return LinearDiffOp::identity();
        }
        let chains: Vec<Vec<RationalFn>> = kernel
            .iter()
            .map(|k| self.eigenfunction(k).x_derivative_chain(p))
            .collect();
        let minor = |skip: usize| -> RationalFn {
            let rows: Vec<Vec<RationalFn>> = (0..=p)
                .filter(|&r| r != skip)
                .map(|r| (0..p).map(|j| chains[j][r].clone()).collect())
                .collect();
            determinant(&rows)
        };
        let top = minor(p);
        debug_assert!(!top.is_zero(), "independent eigenfunctions");
        let coeffs: Vec<RationalFn> = (0..=p)
            .map(|r| {
                let sign = if (r + p) % 2 == 0 { int(1) } else { int(-1) };
                minor(r).div(&top).mul_scalar(&sign)
            })
            .collect();
        LinearDiffOp::new(coeffs)
    }

    /// The ladder operator of shift `q`: the intertwiner whose kernel is the
    /// symmetric difference between the diagram and its translate by `q`.
    pub fn ladder(&self, q: i64) -> LadderOperator {
        let kernel = self
            .diagram
            .translate(q)
            .symmetric_difference(&self.diagram);
        let operator = self.intertwiner(&kernel);
        LadderOperator {
            operator,
            kernel,
            shift: q,
        }
    }

    /// The ladder of shift `q` when it annihilates only decaying states,
    /// which happens exactly at the critical shifts of the diagram.
    pub fn annihilator(&self, q: i64) -> Result<LadderOperator, CoreError> {
        let lad = self.ladder(q);
        if let Some(witness) = lad.kernel.iter().find(|&k| self.diagram.contains(k)) {
            return Err(CoreError::NotAnnihilator { shift: q, witness });
        }
        Ok(lad)
    }

    /// The product of `(2k+1) - T` over the given roots, as an operator.
    pub fn hamiltonian_polynomial(&self, roots: &IndexSet) -> LinearDiffOp {
        let t = self.hamiltonian();
        let mut acc = LinearDiffOp::identity();
        for k in roots.iter() {
            let factor = LinearDiffOp::identity()
                .scale(&int(2 * k + 1))
                .sub(&t);
            acc = factor.compose(&acc);
        }
        acc
    }

    /// Split the potential as `x^2 + 2*index + A/h + B/h^2` with `h` the
    /// primitive part of the dressed polynomial and `deg B < deg h`.
    pub fn potential_decomposition(&self) -> (MultiPoly, RationalFn, RationalFn) {
        let well = x().pow(2).add(&MultiPoly::constant(int(2 * self.index())));
        let rest = self.potential.sub(&RationalFn::from_poly(well.clone()));
        if rest.is_zero() {
            return (well, RationalFn::zero(), RationalFn::zero());
        }
        let base = self.dressed.primitive_part();
        let base_sq = base.mul(&base);
        if rest.den() != &base_sq {
            return (well, rest, RationalFn::zero());
        }
        let num = univar::to_dense(rest.num(), Var::X).expect("x-only numerator");
        let den = univar::to_dense(&base, Var::X).expect("x-only dressed polynomial");
        let (quot, rem) = univar::div_rem_dense(&num, &den);
        (
            well,
            RationalFn::new(univar::from_dense(Var::X, &quot), base.clone()),
            RationalFn::new(univar::from_dense(Var::X, &rem), base_sq),
        )
    }

    /// Render the potential in the split form, e.g.
    /// `x^2 + 4 + (32*x^2)/(4*x^4 + 3) - (384*x^2)/(4*x^4 + 3)^2`.
    pub fn potential_pretty(&self) -> String {
        let (well, first, second) = self.potential_decomposition();
        let base = self.dressed.primitive_part();
        let mut out = well.to_string();
        let mut push = |f: &RationalFn, power: u32| {
            if f.is_zero() {
                return;
            }
            let lead_neg = f
                .num()
                .leading()
                .map(|(_, c)| crate::scalar::signum(c) < 0)
                .unwrap_or(false);
            let num = if lead_neg { f.num().neg() } else { f.num().clone() };
            let den = if power == 1 {
                format!("({})", base)
            } else {
                format!("({})^{}", base, power)
            };
            out.push_str(if lead_neg { " - " } else { " + " });
            out.push_str(&format!("({})/{}", num, den));
        };
        push(&first, 1);
        push(&second, 2);
        out
    }
}

/// A ladder operator between an extension and its translate: the monic
/// intertwiner whose kernel sites are the deviation between the two diagrams.
#[derive(Debug, Clone)]
pub struct LadderOperator {
    operator: LinearDiffOp,
    kernel: IndexSet,
    shift: i64,
}

impl LadderOperator {
    pub fn operator(&self) -> &LinearDiffOp {
        &self.operator
    }

    pub fn kernel(&self) -> &IndexSet {
        &self.kernel
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn order(&self) -> usize {
        self.kernel.len()
    }

    /// Scalar produced on the eigenfunction with label `m` at a critical
    /// shift: `2^q * prod_{k in kernel} (m - k)`.
    pub fn eigenfactor(&self, m: i64) -> Rat {
        let mut acc = crate::scalar::pow2(self.shift);
        for k in self.kernel.iter() {
            acc *= int(m - k);
        }
        acc
    }

    pub fn apply(&self, f: &ExpPolyFn) -> ExpPolyFn {
        self.operator.apply(f)
    }
}
