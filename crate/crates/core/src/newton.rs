//! Newton polygons over exact rational coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;


use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// One segment of the lower hull: `length` roots of valuation `-slope`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    pub slope: BigRational,
    pub length: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NewtonPolygon {
    points: Vec<(i64, BigRational)>,
    vertices: Vec<(i64, BigRational)>,
    segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Lower convex hull of the finite-valuation points. `None` valuations
    /// mark zero coefficients and are skipped.
    pub fn from_points(input: &[(i64, Option<BigRational>)]) -> Result<Self> {
        let mut points: Vec<(i64, BigRational)> = input
            .iter()
            .filter_map(|(x, v)| v.clone().map(|v| (*x, v)))
            .collect();
        points.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        points.dedup_by(|a, b| {
            if a.0 == b.0 {
                // keep the smaller valuation, the list is sorted
                true
            } else {
                false
            }
        });
        if points.len() < 2 {
            return Err(Error::DegenerateNewtonInput(points.len()));
        }
        // monotone chain, lower hull
        let mut hull: Vec<(i64, BigRational)> = Vec::new();
        for p in &points {
            while hull.len() >= 2 {
                let a = &hull[hull.len() - 2];
                let b = &hull[hull.len() - 1];
                // keep b only if it is strictly below the chord a-p
                let lhs = (&b.1 - &a.1) * BigRational::from(BigInt::from(p.0 - a.0));
                let rhs = (&p.1 - &a.1) * BigRational::from(BigInt::from(b.0 - a.0));
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p.clone());
        }
        let mut segments = Vec::with_capacity(hull.len() - 1);
        for w in hull.windows(2) {
            let dx = w[1].0 - w[0].0;
            let slope = (&w[1].1 - &w[0].1) / BigRational::from(BigInt::from(dx));
            segments.push(Segment {
                slope,
                length: dx as u64,
            });
        }
        Ok(NewtonPolygon {
            points,
            vertices: hull,
            segments,
        })
    }

    pub fn points(&self) -> &[(i64, BigRational)] {
        &self.points
    }

    pub fn vertices(&self) -> &[(i64, BigRational)] {
        &self.vertices
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Multiset of root valuations: a segment of slope -s and horizontal
    /// length n certifies n roots of valuation s.
    pub fn root_valuations(&self) -> Vec<(BigRational, u64)> {
        self.segments
            .iter()
            .map(|s| (-s.slope.clone(), s.length))
            .collect()
    }

    /// True when there is a single segment, of the given slope.
    pub fn is_single_slope(&self, slope: &BigRational) -> bool {
        self.segments.len() == 1 && &self.segments[0].slope == slope
    }

    /// Horizontal span covered by the hull.
    pub fn span(&self) -> i64 {
        self.vertices.last().unwrap().0 - self.vertices[0].0
    }
}

/// Convenience: polygon of an additive polynomial sum c_i X^{q^i} given the
/// valuations of its coefficients (x-coordinate q^i).
pub fn additive_polygon(
    q: u64,
    coeff_vals: &[(u32, Option<BigRational>)],
) -> Result<NewtonPolygon> {
    let pts: Vec<(i64, Option<BigRational>)> = coeff_vals
        .iter()
        .map(|(i, v)| ((q.pow(*i)) as i64, v.clone()))
        .collect();
    NewtonPolygon::from_points(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn carlitz_q2_single_segment() {
        // phi_t = tX + X^2 at (t): points (1,1),(2,0) -> slope -1, length 1
        let np = NewtonPolygon::from_points(&[(1, Some(rat_int(1))), (2, Some(rat_int(0)))])
            .unwrap();
        assert_eq!(np.segments().len(), 1);
        assert_eq!(np.segments()[0].slope, rat_int(-1));
        assert_eq!(np.segments()[0].length, 1);
        assert_eq!(np.root_valuations(), vec![(rat_int(1), 1)]);
    }

    #[test]
    fn carlitz_q3_half_slope() {
        // phi_t = tX + X^3 at (t): points (1,1),(3,0) -> slope -1/2, length 2
        let np = NewtonPolygon::from_points(&[(1, Some(rat_int(1))), (3, Some(rat_int(0)))])
            .unwrap();
        assert_eq!(np.segments().len(), 1);
        assert_eq!(np.segments()[0].slope, rat(-1, 2));
        assert_eq!(np.segments()[0].length, 2);
        assert_eq!(np.root_valuations(), vec![(rat(1, 2), 2)]);
    }

    #[test]
    fn unit_polygon() {
        let np = NewtonPolygon::from_points(&[
            (0, Some(rat_int(0))),
            (1, Some(rat_int(0))),
            (2, Some(rat_int(0))),
        ])
        .unwrap();
        assert_eq!(np.segments().len(), 1);
        assert!(np.segments()[0].slope.is_zero());
        assert_eq!(np.segments()[0].length, 2);
    }

    #[test]
    fn skips_infinite_valuations_and_needs_two_points() {
        assert!(matches!(
            NewtonPolygon::from_points(&[(0, Some(rat_int(0))), (1, None)]),
            Err(Error::DegenerateNewtonInput(1))
        ));
    }

    #[test]
    fn convexity_and_length_sum() {
        let np = NewtonPolygon::from_points(&[
            (0, Some(rat_int(3))),
            (1, Some(rat_int(1))),
            (2, Some(rat_int(2))),
            (4, Some(rat_int(0))),
        ])
        .unwrap();
        let slopes: Vec<BigRational> = np.segments().iter().map(|s| s.slope.clone()).collect();
        for w in slopes.windows(2) {
            assert!(w[0] < w[1], "slopes strictly increasing");
        }
        let total: u64 = np.segments().iter().map(|s| s.length).sum();
        assert_eq!(total as i64, np.span());
    }
}
