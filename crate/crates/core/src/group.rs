//! The isometry group of the Gödel universe as a matrix Lie group.
//!
//! The group is ℝ × G₂ × ℝ where G₂ is the two-dimensional non-commutative
//! Lie group. A point carries coordinates (x0, x1, x2, x3); the first three
//! embed into 4×4 upper-triangular matrices, the x3 factor is central and is
//! carried as a plain additive coordinate.

use nalgebra::Matrix4;

/// Series guard for the exponential factor (1 - e^{-c})/c near c = 0.
const EXP_FACTOR_SERIES_CUTOFF: f64 = 1e-5;

/// A group element in coordinates (x0, x1, x2, x3).
///
/// The identity is (0, 0, 0, 0). The matrix image of the (x0, x1, x2) part
/// is upper triangular with (0,0) entry e^{-x1} and unit diagonal elsewhere;
/// see [`GroupElement::to_matrix`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        x0: 0.0,
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    /// All coordinates must be finite.
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        assert!(
            x0.is_finite() && x1.is_finite() && x2.is_finite() && x3.is_finite(),
            "group element coordinates must be finite"
        );
        GroupElement { x0, x1, x2, x3 }
    }

    pub fn identity() -> Self {
        Self::IDENTITY
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Group law: (g h).x2 = g.x2 + e^{-g.x1} h.x2, the other coordinates add.
    ///
    /// Matches the matrix product of the two images under `to_matrix`, with
    /// the central x3 factor handled additively.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            x0: self.x0 + other.x0,
            x1: self.x1 + other.x1,
            x2: self.x2 + (-self.x1).exp() * other.x2,
            x3: self.x3 + other.x3,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            x0: -self.x0,
            x1: -self.x1,
            x2: -self.x2 * self.x1.exp(),
            x3: -self.x3,
        }
    }

    /// Matrix image of the (x0, x1, x2) part:
    ///
    /// ```text
    /// [ e^{-x1}  0  0  x2 ]
    /// [   0      1  0  x1 ]
    /// [   0      0  1  x0 ]
    /// [   0      0  0  1  ]
    /// ```
    ///
    /// The x3 coordinate has no slot here; it is carried alongside.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::identity();
        m[(0, 0)] = (-self.x1).exp();
        m[(0, 3)] = self.x2;
        m[(1, 3)] = self.x1;
        m[(2, 3)] = self.x0;
        m
    }
}

/// Basis tag for Lie-algebra components.
///
/// The natural basis (e0, e1, e2, e3) comes from the coordinate directions at
/// the identity. The orthonormal basis replaces e2 by e2' = √2 (e0 - e2),
/// which is unit spacelike for the metric; e0, e1, e3 are shared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    Natural,
    Orthonormal,
}

/// A Lie-algebra element with components tagged by frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraVector {
    pub frame: Frame,
    pub c: [f64; 4],
}

impl AlgebraVector {
    pub fn natural(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        AlgebraVector {
            frame: Frame::Natural,
            c: [c0, c1, c2, c3],
        }
    }

    pub fn orthonormal(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        AlgebraVector {
            frame: Frame::Orthonormal,
            c: [c0, c1, c2, c3],
        }
    }

    /// Components in the natural frame: with orthonormal components
    /// (w0, w1, w2, w3), v0 = w0 + √2 w2, v1 = w1, v2 = -√2 w2, v3 = w3.
    pub fn to_natural(&self) -> Self {
        match self.frame {
            Frame::Natural => *self,
            Frame::Orthonormal => {
                let [w0, w1, w2, w3] = self.c;
                let s = std::f64::consts::SQRT_2;
                AlgebraVector::natural(w0 + s * w2, w1, -s * w2, w3)
            }
        }
    }

    /// Inverse of [`to_natural`](Self::to_natural): w0 = v0 + v2, w2 = -v2/√2.
    pub fn to_orthonormal(&self) -> Self {
        match self.frame {
            Frame::Orthonormal => *self,
            Frame::Natural => {
                let [v0, v1, v2, v3] = self.c;
                let s = std::f64::consts::SQRT_2;
                AlgebraVector::orthonormal(v0 + v2, v1, -v2 / s, v3)
            }
        }
    }

    pub fn to_frame(&self, frame: Frame) -> Self {
        match frame {
            Frame::Natural => self.to_natural(),
            Frame::Orthonormal => self.to_orthonormal(),
        }
    }

    /// Matrix image of the 3D part in the natural basis:
    /// e0 ↦ E_{23}, e1 ↦ -E_{00} + E_{13}, e2 ↦ E_{03} (0-based indices).
    /// The central e3 component has no matrix slot.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let v = self.to_natural().c;
        let mut m = Matrix4::zeros();
        m[(0, 0)] = -v[1];
        m[(0, 3)] = v[2];
        m[(1, 3)] = v[1];
        m[(2, 3)] = v[0];
        m
    }

    /// Lie bracket. Bilinear and antisymmetric; in the natural basis
    /// [e1, e2] = -e2 and e0, e3 are central. The result is returned in the
    /// frame of `self`.
    pub fn bracket(&self, other: &AlgebraVector) -> AlgebraVector {
        let a = self.to_natural().c;
        let b = other.to_natural().c;
        let out = AlgebraVector::natural(0.0, 0.0, -(a[1] * b[2] - a[2] * b[1]), 0.0);
        out.to_frame(self.frame)
    }
}

/// Structure constants C^k_{ij} over the orthonormal frame (e0, e1, e2', e3),
/// indexed as `c[k][i][j]`. The only nonzero entries are
/// C^0_{12} = -C^0_{21} = √2 and C^2_{12} = -C^2_{21} = -1.
pub fn structure_constants() -> [[[f64; 4]; 4]; 4] {
    let mut c = [[[0.0; 4]; 4]; 4];
    let s = std::f64::consts::SQRT_2;
    c[0][1][2] = s;
    c[0][2][1] = -s;
    c[2][1][2] = -1.0;
    c[2][2][1] = 1.0;
    c
}

/// (1 - e^{-c})/c with its removable singularity at c = 0 filled in.
fn exp_factor(c: f64) -> f64 {
    if c.abs() < EXP_FACTOR_SERIES_CUTOFF {
        1.0 - c / 2.0 + c * c / 6.0
    } else {
        (1.0 - (-c).exp()) / c
    }
}

/// Group exponential. For v = (c0, c1, c2, c3) in the natural frame,
/// exp(v) = (c0, c1, c2 (1 - e^{-c1})/c1, c3); this equals the matrix
/// exponential of the image of v. Vectors in the orthonormal frame are
/// converted first.
pub fn exp(v: &AlgebraVector) -> GroupElement {
    let c = v.to_natural().c;
    GroupElement::new(c[0], c[1], c[2] * exp_factor(c[1]), c[3])
}

/// Differential of left translation by `g`, as coordinate rates at `g`:
/// dl_g(v) = (v0, v1, e^{-x1} v2, v3) for v in the natural frame. Realized
/// by the matrix product matrix(g) · matrix(v).
pub fn left_translate_tangent(g: &GroupElement, v: &AlgebraVector) -> [f64; 4] {
    let c = v.to_natural().c;
    [c[0], c[1], (-g.x1).exp() * c[2], c[3]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::SQRT_2;

    /// Matrix exponential by scaling-and-squaring on a Taylor series.
    /// Test-only oracle, independent of the closed form in `exp`.
    fn expm(a: &Matrix4<f64>) -> Matrix4<f64> {
        let norm = a.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let s = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let b = a / 2f64.powi(s as i32);
        let mut term = Matrix4::identity();
        let mut sum = Matrix4::identity();
        for k in 1..=24 {
            term = term * b / k as f64;
            sum += term;
        }
        for _ in 0..s {
            sum = sum * sum;
        }
        sum
    }

    fn assert_close(g: &GroupElement, h: &GroupElement, tol: f64) {
        for (a, b) in g.coords().iter().zip(h.coords().iter()) {
            assert_abs_diff_eq!(a, b, epsilon = tol);
        }
    }

    #[test]
    fn compose_with_identity() {
        let g = GroupElement::new(0.3, -1.2, 2.0, 0.7);
        assert_close(&g.compose(&GroupElement::IDENTITY), &g, 0.0);
        assert_close(&GroupElement::IDENTITY.compose(&g), &g, 0.0);
    }

    #[test]
    fn compose_twists_x2() {
        let g = GroupElement::new(0.0, 2f64.ln(), 0.0, 0.0);
        let h = GroupElement::new(0.0, 0.0, 1.0, 0.0);
        let gh = g.compose(&h);
        assert_close(&gh, &GroupElement::new(0.0, 2f64.ln(), 0.5, 0.0), 1e-15);

        // Independent check through the 4×4 matrix images.
        let prod = g.to_matrix() * h.to_matrix();
        assert_abs_diff_eq!(prod[(0, 3)], gh.x2, epsilon = 1e-15);
        assert_abs_diff_eq!(prod[(1, 3)], gh.x1, epsilon = 1e-15);
        assert_abs_diff_eq!(prod[(2, 3)], gh.x0, epsilon = 1e-15);
    }

    #[test]
    fn compose_is_additive_when_x1_zero() {
        let g = GroupElement::new(1.0, 0.0, 2.0, 3.0);
        let h = GroupElement::new(4.0, 0.0, 5.0, 6.0);
        assert_close(&g.compose(&h), &GroupElement::new(5.0, 0.0, 7.0, 9.0), 0.0);
    }

    #[test]
    fn inverse_examples() {
        assert_close(
            &GroupElement::IDENTITY.inverse(),
            &GroupElement::IDENTITY,
            0.0,
        );
        let g = GroupElement::new(0.0, 2f64.ln(), 0.5, 0.0);
        let inv = g.inverse();
        assert_close(&inv, &GroupElement::new(0.0, -2f64.ln(), -1.0, 0.0), 1e-15);
        assert_close(&g.compose(&inv), &GroupElement::IDENTITY, 1e-15);
    }

    #[test]
    fn to_matrix_layout() {
        assert_eq!(GroupElement::IDENTITY.to_matrix(), Matrix4::identity());
        let g = GroupElement::new(0.0, 0.0, 5.0, 0.0);
        let m = g.to_matrix();
        assert_eq!(m[(0, 3)], 5.0);
        assert_eq!(m[(0, 0)], 1.0);
    }

    #[test]
    fn bracket_natural_basis() {
        let e1 = AlgebraVector::natural(0.0, 1.0, 0.0, 0.0);
        let e2 = AlgebraVector::natural(0.0, 0.0, 1.0, 0.0);
        let e0 = AlgebraVector::natural(1.0, 0.0, 0.0, 0.0);
        assert_eq!(e1.bracket(&e2).c, [0.0, 0.0, -1.0, 0.0]);
        assert_eq!(e0.bracket(&e1).c, [0.0; 4]);
        assert_eq!(e0.bracket(&e2).c, [0.0; 4]);
    }

    #[test]
    fn bracket_orthonormal_basis() {
        // [e1, e2'] = √2 e0 - e2' in the orthonormal frame.
        let e1 = AlgebraVector::orthonormal(0.0, 1.0, 0.0, 0.0);
        let e2p = AlgebraVector::orthonormal(0.0, 0.0, 1.0, 0.0);
        let br = e1.bracket(&e2p);
        assert_eq!(br.frame, Frame::Orthonormal);
        assert_abs_diff_eq!(br.c[0], SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(br.c[2], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(br.c[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(br.c[3], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn bracket_agrees_with_matrix_commutator() {
        // The bracket of the 3D part must match the commutator of images.
        let v = AlgebraVector::natural(0.4, -1.3, 2.2, 0.0);
        let w = AlgebraVector::natural(-0.7, 0.9, 1.1, 0.0);
        let br = v.bracket(&w).to_matrix();
        let comm = v.to_matrix() * w.to_matrix() - w.to_matrix() * v.to_matrix();
        assert!((br - comm).iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn structure_constants_values() {
        let c = structure_constants();
        assert_eq!(c[0][1][2], SQRT_2);
        assert_eq!(c[2][1][2], -1.0);
        // Everything involving index 3 vanishes.
        for k in 0..4 {
            for i in 0..4 {
                assert_eq!(c[k][i][3], 0.0);
                assert_eq!(c[k][3][i], 0.0);
                assert_eq!(c[3][k][i], 0.0);
            }
        }
    }

    #[test]
    fn structure_constants_reproduce_bracket() {
        let c = structure_constants();
        let basis: Vec<AlgebraVector> = (0..4)
            .map(|i| {
                let mut comp = [0.0; 4];
                comp[i] = 1.0;
                AlgebraVector {
                    frame: Frame::Orthonormal,
                    c: comp,
                }
            })
            .collect();
        for i in 0..4 {
            for j in 0..4 {
                let br = basis[i].bracket(&basis[j]);
                for k in 0..4 {
                    assert_abs_diff_eq!(br.c[k], c[k][i][j], epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn exp_one_parameter_subgroups() {
        let g = exp(&AlgebraVector::natural(2.5, 0.0, 0.0, 0.0));
        assert_close(&g, &GroupElement::new(2.5, 0.0, 0.0, 0.0), 0.0);
        assert_close(
            &exp(&AlgebraVector::natural(0.0, 0.0, 0.0, 0.0)),
            &GroupElement::IDENTITY,
            0.0,
        );
        let h = exp(&AlgebraVector::natural(0.0, 1.0, 1.0, 0.0));
        assert_close(
            &h,
            &GroupElement::new(0.0, 1.0, 1.0 - (-1f64).exp(), 0.0),
            1e-15,
        );
    }

    #[test]
    fn exp_matches_matrix_exponential() {
        let vs = [
            AlgebraVector::natural(0.3, 1.7, -2.0, 0.0),
            AlgebraVector::natural(-1.0, -0.4, 0.9, 0.0),
            AlgebraVector::natural(2.0, 1e-7, 3.0, 0.0),
            AlgebraVector::natural(0.0, 4.0, -1.5, 0.0),
        ];
        for v in &vs {
            let g = exp(v);
            let m = expm(&v.to_matrix());
            assert_abs_diff_eq!(m[(0, 3)], g.x2, epsilon = 1e-12);
            assert_abs_diff_eq!(m[(1, 3)], g.x1, epsilon = 1e-12);
            assert_abs_diff_eq!(m[(2, 3)], g.x0, epsilon = 1e-12);
            assert_abs_diff_eq!(m[(0, 0)], (-g.x1).exp(), epsilon = 1e-12);
        }
    }

    #[test]
    fn left_translate_examples() {
        let v = AlgebraVector::natural(0.7, -0.2, 1.4, 0.3);
        let at_id = left_translate_tangent(&GroupElement::IDENTITY, &v);
        assert_eq!(at_id, v.c);

        let g = GroupElement::new(0.0, 2f64.ln(), 0.0, 0.0);
        let e2 = AlgebraVector::natural(0.0, 0.0, 1.0, 0.0);
        let rates = left_translate_tangent(&g, &e2);
        assert_abs_diff_eq!(rates[2], 0.5, epsilon = 1e-15);

        // e0 is central and its image only has the x0 slot.
        let e0 = AlgebraVector::natural(1.0, 0.0, 0.0, 0.0);
        for g in [
            GroupElement::new(1.0, -2.0, 3.0, 0.5),
            GroupElement::new(-0.3, 0.8, -1.0, 2.0),
        ] {
            assert_eq!(left_translate_tangent(&g, &e0), [1.0, 0.0, 0.0, 0.0]);
        }

        // Against the matrix product realization.
        let m = g.to_matrix() * e2.to_matrix();
        assert_abs_diff_eq!(m[(0, 3)], rates[2], epsilon = 1e-15);
    }

    fn small_coord() -> impl Strategy<Value = f64> {
        -5.0..5.0
    }

    fn arb_element() -> impl Strategy<Value = GroupElement> {
        (small_coord(), small_coord(), small_coord(), small_coord())
            .prop_map(|(a, b, c, d)| GroupElement::new(a, b, c, d))
    }

    fn arb_vector() -> impl Strategy<Value = AlgebraVector> {
        (small_coord(), small_coord(), small_coord(), small_coord())
            .prop_map(|(a, b, c, d)| AlgebraVector::natural(a, b, c, d))
    }

    proptest! {
        #[test]
        fn associativity(g in arb_element(), h in arb_element(), k in arb_element()) {
            let lhs = g.compose(&h).compose(&k);
            let rhs = g.compose(&h.compose(&k));
            for (a, b) in lhs.coords().iter().zip(rhs.coords().iter()) {
                prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
            }
        }

        #[test]
        fn matrix_homomorphism(g in arb_element(), h in arb_element()) {
            let lhs = g.compose(&h).to_matrix();
            let rhs = g.to_matrix() * h.to_matrix();
            let scale = rhs.iter().map(|x| x.abs()).fold(1.0, f64::max);
            prop_assert!((lhs - rhs).iter().all(|x| x.abs() < 1e-12 * scale));
        }

        #[test]
        fn inverse_is_involutive(g in arb_element()) {
            let back = g.inverse().inverse();
            for (a, b) in g.coords().iter().zip(back.coords().iter()) {
                prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
            }
        }

        #[test]
        fn bracket_antisymmetry_and_jacobi(
            u in arb_vector(), v in arb_vector(), w in arb_vector()
        ) {
            let uv = u.bracket(&v);
            let vu = v.bracket(&u);
            for i in 0..4 {
                prop_assert!((uv.c[i] + vu.c[i]).abs() < 1e-12);
            }
            // [[u,v],w] + [[v,w],u] + [[w,u],v] = 0
            let mut jac = [0.0; 4];
            let t1 = u.bracket(&v).bracket(&w);
            let t2 = v.bracket(&w).bracket(&u);
            let t3 = w.bracket(&u).bracket(&v);
            for i in 0..4 {
                jac[i] = t1.c[i] + t2.c[i] + t3.c[i];
            }
            prop_assert!(jac.iter().all(|x| x.abs() < 1e-12));
        }

        #[test]
        fn exp_of_opposite_vectors(v in arb_vector()) {
            let prod = exp(&v).compose(&exp(&AlgebraVector::natural(
                -v.c[0], -v.c[1], -v.c[2], -v.c[3],
            )));
            for x in prod.coords() {
                prop_assert!(x.abs() < 1e-10);
            }
        }

        #[test]
        fn frame_roundtrip(v in arb_vector()) {
            let back = v.to_orthonormal().to_natural();
            for i in 0..4 {
                prop_assert!((v.c[i] - back.c[i]).abs() < 1e-14 * (1.0 + v.c[i].abs()));
            }
        }
    }
}
