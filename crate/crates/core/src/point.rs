//! Points and displacement vectors in the rational plane.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A point of the Euclidean plane with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

/// A displacement (direction) in the plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Vector {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    /// Convenience constructor for integer coordinates.
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from(x), Scalar::from(y))
    }

    /// Squared Euclidean distance. Squaring keeps the value rational; every
    /// comparison made anywhere in this crate is an order comparison, which
    /// squaring preserves.
    pub fn dist_sq(&self, other: &Point) -> Scalar {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn vector_to(&self, other: &Point) -> Vector {
        Vector {
            x: &other.x - &self.x,
            y: &other.y - &self.y,
        }
    }

    pub fn translate(&self, v: &Vector) -> Point {
        Point {
            x: &self.x + &v.x,
            y: &self.y + &v.y,
        }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = Scalar::ratio(1, 2);
        Point {
            x: (&self.x + &other.x) * half.clone(),
            y: (&self.y + &other.y) * half,
        }
    }
}

impl Vector {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Vector { x, y }
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &Vector) -> Scalar {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Counterclockwise quarter turn: (x, y) -> (-y, x).
    pub fn rot90(&self) -> Vector {
        Vector {
            x: -&self.y,
            y: self.x.clone(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Vector {
        Vector {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn neg(&self) -> Vector {
        Vector {
            x: -&self.x,
            y: -&self.y,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
