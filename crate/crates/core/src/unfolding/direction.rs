use serde::Serialize;

use crate::angle::Angle;
use crate::real::Rational;

use super::tiling::{normalized_slope, SquareTiling};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum DirectionClass {
    /// Slope in normalized tiling coordinates; `None` is vertical.
    Rational(#[serde(serialize_with = "ser_slope")] Option<Rational>),
    Irrational { warning: Option<String> },
}

fn ser_slope<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&crate::real::format_rational(*q)),
        None => s.serialize_str("inf"),
    }
}

impl DirectionClass {
    pub fn is_rational(&self) -> bool {
        matches!(self, DirectionClass::Rational(_))
    }
}

/// A direction given by its exact slope (`None` for vertical).
pub fn classify_slope(slope: Option<Rational>, tiling: &SquareTiling) -> DirectionClass {
    match normalized_slope(tiling, slope) {
        Some(s) => DirectionClass::Rational(s),
        None => DirectionClass::Irrational {
            warning: Some("tiling aspect ratio is not rational within the search bound".into()),
        },
    }
}

/// Rationality of a direction angle. Only π-rational angles can be
/// certified; among them `tan` is rational exactly at multiples of π/4.
pub fn classify_direction(direction: Angle, tiling: &SquareTiling) -> DirectionClass {
    match direction.rational_slope() {
        Some(Ok(slope)) => classify_slope(slope, tiling),
        // rational shears and aspect ratios keep irrational slopes irrational
        Some(Err(())) => DirectionClass::Irrational {
            warning: tiling.aspect.is_none().then(|| "tiling aspect ratio is not rational".to_string()),
        },
        None => DirectionClass::Irrational {
            warning: Some("inexact direction: rationality cannot be certified".into()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unfolding::{is_square_tiled, origami};

    fn tiling() -> SquareTiling {
        is_square_tiled(&origami(&[(0, 0), (1, 0), (2, 0)], Some((1, 1))).unwrap(), 100).unwrap()
    }

    #[test]
    fn slopes_and_angles() {
        let t = tiling();
        assert_eq!(classify_slope(Some(Rational::new(1, 2)), &t), DirectionClass::Rational(Some(Rational::new(1, 2))));
        assert_eq!(classify_direction(Angle::pi_frac(1, 2), &t), DirectionClass::Rational(None));
        assert_eq!(classify_direction(Angle::pi_frac(1, 3), &t), DirectionClass::Irrational { warning: None });
        assert!(matches!(
            classify_direction(Angle::radians_inexact(0.3), &t),
            DirectionClass::Irrational { warning: Some(_) }
        ));
    }
}
