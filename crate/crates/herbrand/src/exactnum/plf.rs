use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

use super::Rational;

/// An exact, continuous, strictly increasing piecewise-linear function on
/// `[0, oo)` with `f(0) = 0`.
///
/// The function is stored as its breakpoints `(x_i, y_i)` (the first is
/// always `(0, 0)`, the `x_i` strictly increasing) together with one slope
/// per breakpoint: `slopes[i]` applies on `[x_i, x_{i+1})` and the last slope
/// extends to infinity. All slopes are positive rationals.
///
/// Values are kept in canonical form: adjacent segments never share a slope,
/// so every interior breakpoint is a genuine kink and structural equality
/// coincides with pointwise equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PiecewiseLinearFn {
    points: Vec<(Rational, Rational)>,
    slopes: Vec<Rational>,
}

impl PiecewiseLinearFn {
    /// The identity function `x -> x`.
    pub fn identity() -> Self {
        Self::linear(Rational::one()).expect("slope 1 is positive")
    }

    /// The linear function `x -> slope * x`. The slope must be positive.
    pub fn linear(slope: Rational) -> Result<Self> {
        Self::from_breaks_and_slopes(&[], &[slope])
    }

    /// Builds the function with the given interior break x-coordinates and
    /// per-segment slopes (`slopes.len() == breaks.len() + 1`). Breakpoint
    /// y-values are computed from continuity and `f(0) = 0`; segments with
    /// equal adjacent slopes are merged into canonical form.
    pub fn from_breaks_and_slopes(breaks: &[Rational], slopes: &[Rational]) -> Result<Self> {
        if slopes.len() != breaks.len() + 1 {
            return Err(Error::InvalidParameter(format!(
                "need one slope per segment: {} breaks require {} slopes, got {}",
                breaks.len(),
                breaks.len() + 1,
                slopes.len()
            )));
        }
        for s in slopes {
            if !(s > &Rational::zero()) {
                return Err(Error::InvalidParameter(format!("slope {s} is not positive")));
            }
        }
        let zero = Rational::zero();
        for (i, b) in breaks.iter().enumerate() {
            if !(b > &zero) {
                return Err(Error::InvalidParameter(format!("break x = {b} is not positive")));
            }
            if i > 0 && !(b > &breaks[i - 1]) {
                return Err(Error::InvalidParameter(format!(
                    "breaks not strictly increasing at x = {b}"
                )));
            }
        }

        // Merge runs of equal slopes, keeping only genuine kinks.
        let mut merged_breaks: Vec<Rational> = Vec::new();
        let mut merged_slopes: Vec<Rational> = vec![slopes[0].clone()];
        for (b, s) in breaks.iter().zip(&slopes[1..]) {
            if s != merged_slopes.last().expect("nonempty") {
                merged_breaks.push(b.clone());
                merged_slopes.push(s.clone());
            }
        }

        let mut points = vec![(Rational::zero(), Rational::zero())];
        for (i, b) in merged_breaks.iter().enumerate() {
            let (px, py) = points.last().expect("nonempty").clone();
            let y = py + &merged_slopes[i] * &(b - &px);
            points.push((b.clone(), y));
        }
        Ok(PiecewiseLinearFn { points, slopes: merged_slopes })
    }

    /// Breakpoints `(x_i, y_i)`, starting with `(0, 0)`.
    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// Per-segment slopes; `slopes()[i]` applies from `breakpoints()[i]`.
    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    pub fn first_slope(&self) -> &Rational {
        &self.slopes[0]
    }

    /// Slope of the unbounded final segment.
    pub fn final_slope(&self) -> &Rational {
        self.slopes.last().expect("at least one segment")
    }

    /// x-coordinate of the last genuine kink, or 0 when the function is
    /// linear.
    pub fn last_break_x(&self) -> &Rational {
        &self.points.last().expect("nonempty").0
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 1 && self.slopes[0] == Rational::one()
    }

    /// True when slopes strictly increase left to right (psi-shaped).
    pub fn is_convex(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] < w[1])
    }

    /// True when slopes strictly decrease left to right (phi-shaped).
    pub fn is_concave(&self) -> bool {
        self.slopes.windows(2).all(|w| w[0] > w[1])
    }

    /// Evaluates the function at `x >= 0`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if x < &Rational::zero() {
            return Err(Error::Domain(format!("argument {x} is negative")));
        }
        Ok(self.eval_nonneg(x))
    }

    fn eval_nonneg(&self, x: &Rational) -> Rational {
        // Index of the segment containing x: last breakpoint with x_i <= x.
        let i = self.points.partition_point(|(px, _)| px <= x) - 1;
        let (px, py) = &self.points[i];
        py + &self.slopes[i] * &(x - px)
    }

    /// The exact inverse function, again in canonical form.
    ///
    /// Strict monotonicity and positivity of slopes make the inverse another
    /// valid piecewise-linear function; `f.invert().invert() == f` exactly.
    pub fn invert(&self) -> Self {
        let points = self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect();
        let slopes = self.slopes.iter().map(Rational::recip).collect();
        // Reciprocals of distinct positive slopes stay distinct, so the
        // result is already canonical.
        PiecewiseLinearFn { points, slopes }
    }

    /// The composite `self(inner(x))`, exact and canonical.
    pub fn compose(&self, inner: &Self) -> Self {
        // Kinks of the composite occur at kinks of `inner` and at preimages
        // under `inner` of kinks of `self`; `inner` maps [0, oo) onto
        // [0, oo), so every kink of `self` has a preimage.
        let inner_inv = inner.invert();
        let mut xs: Vec<Rational> = inner.points.iter().map(|(x, _)| x.clone()).collect();
        for (bx, _) in &self.points {
            xs.push(inner_inv.eval_nonneg(bx));
        }
        xs.sort();
        xs.dedup();

        let points: Vec<(Rational, Rational)> = xs
            .into_iter()
            .map(|x| {
                let y = self.eval_nonneg(&inner.eval_nonneg(&x));
                (x, y)
            })
            .collect();
        let mut slopes: Vec<Rational> = points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect();
        slopes.push(self.final_slope() * inner.final_slope());

        let breaks: Vec<Rational> = points[1..].iter().map(|(x, _)| x.clone()).collect();
        Self::from_breaks_and_slopes(&breaks, &slopes)
            .expect("composite of valid functions is valid")
    }
}

impl std::fmt::Debug for PiecewiseLinearFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "plf[")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            write!(f, "({x},{y}) slope {}", self.slopes[i])?;
            if i + 1 < self.points.len() {
                write!(f, "; ")?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for PiecewiseLinearFn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Break<'a> {
            x: &'a Rational,
            y: &'a Rational,
        }
        let breaks: Vec<Break<'_>> = self.points.iter().map(|(x, y)| Break { x, y }).collect();
        let mut st = serializer.serialize_struct("PiecewiseLinearFn", 2)?;
        st.serialize_field("breaks", &breaks)?;
        st.serialize_field("slopes", &self.slopes)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Slope 1 on [0, 3], slope 1/2 afterwards.
    fn sample() -> PiecewiseLinearFn {
        PiecewiseLinearFn::from_breaks_and_slopes(&[r(3, 1)], &[r(1, 1), r(1, 2)]).unwrap()
    }

    #[test]
    fn eval_crosses_breakpoint() {
        let f = sample();
        assert_eq!(f.eval(&r(5, 1)).unwrap(), r(4, 1));
        assert_eq!(f.eval(&r(3, 1)).unwrap(), r(3, 1));
        assert_eq!(f.eval(&r(0, 1)).unwrap(), r(0, 1));
        assert!(f.eval(&r(-1, 2)).is_err());
    }

    #[test]
    fn canonical_form_merges_collinear_segments() {
        let g =
            PiecewiseLinearFn::from_breaks_and_slopes(&[r(1, 1)], &[r(1, 1), r(1, 1)]).unwrap();
        assert_eq!(g, PiecewiseLinearFn::identity());
        assert_eq!(g.breakpoints().len(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PiecewiseLinearFn::from_breaks_and_slopes(&[], &[r(0, 1)]).is_err());
        assert!(PiecewiseLinearFn::from_breaks_and_slopes(&[], &[r(-1, 1)]).is_err());
        assert!(PiecewiseLinearFn::from_breaks_and_slopes(&[r(2, 1), r(1, 1)], &[
            r(1, 1),
            r(2, 1),
            r(3, 1),
        ])
        .is_err());
        assert!(
            PiecewiseLinearFn::from_breaks_and_slopes(&[r(1, 1)], &[r(1, 1)]).is_err(),
            "slope count must be breaks + 1"
        );
    }

    #[test]
    fn invert_swaps_axes() {
        // psi of a wild degree-2 break at 1: x on [0,1], 2x - 1 after.
        let psi =
            PiecewiseLinearFn::from_breaks_and_slopes(&[r(1, 1)], &[r(1, 1), r(2, 1)]).unwrap();
        let phi = psi.invert();
        assert_eq!(phi.eval(&r(3, 1)).unwrap(), r(2, 1));
        assert_eq!(phi.eval(&r(1, 1)).unwrap(), r(1, 1));
        assert_eq!(phi.slopes(), &[r(1, 1), r(1, 2)]);
        assert_eq!(phi.invert(), psi);
    }

    #[test]
    fn compose_matches_hand_computation() {
        // outer: x on [0,1], 2x - 1 after; inner: 2x.
        // composite: 2x on [0, 1/2], 4x - 1 after.
        let outer =
            PiecewiseLinearFn::from_breaks_and_slopes(&[r(1, 1)], &[r(1, 1), r(2, 1)]).unwrap();
        let inner = PiecewiseLinearFn::linear(r(2, 1)).unwrap();
        let c = outer.compose(&inner);
        let expected =
            PiecewiseLinearFn::from_breaks_and_slopes(&[r(1, 2)], &[r(2, 1), r(4, 1)]).unwrap();
        assert_eq!(c, expected);
        assert_eq!(c.eval(&r(1, 1)).unwrap(), r(3, 1));
    }

    #[test]
    fn compose_with_identity_is_noop() {
        let f = sample();
        let id = PiecewiseLinearFn::identity();
        assert_eq!(f.compose(&id), f);
        assert_eq!(id.compose(&f), f);
    }

    #[test]
    fn serializes_breaks_and_slopes() {
        let f = sample();
        let json = serde_json::to_value(&f).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "breaks": [{"x": "0", "y": "0"}, {"x": "3", "y": "3"}],
                "slopes": ["1", "1/2"],
            })
        );
    }

    #[test]
    fn shape_predicates() {
        let psi =
            PiecewiseLinearFn::from_breaks_and_slopes(&[r(1, 1)], &[r(1, 1), r(2, 1)]).unwrap();
        assert!(psi.is_convex());
        assert!(!psi.is_concave());
        assert!(psi.invert().is_concave());
        assert!(PiecewiseLinearFn::identity().is_convex());
    }
}
