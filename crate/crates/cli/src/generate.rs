//! Deterministic site-set generators. Same spec, same sites, always.

use anyhow::bail;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use greedygeo::{Point, Scalar, SiteSet};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    /// `n` distinct integer points drawn uniformly from [0, bound]².
    UniformGrid { n: usize, seed: u64, bound: i64 },
    /// `n` exactly cocircular points on the circle of rational `radius`
    /// around the origin, via the parametrization
    /// ((1−t²)/(1+t²), 2t/(1+t²)) at t = 0, 1, −1, 2, −2, …, closing with
    /// (−1, 0), the limit point the parametrization never reaches.
    /// Deterministic; the seed is ignored.
    CocircularRational { n: usize, radius: Scalar },
    /// The `side` × `side` grid spanning [0, bound]².
    Lattice { side: usize, bound: i64 },
    /// `n` points in `clusters` tight groups with integer centers in
    /// [0, bound]².
    Clustered {
        n: usize,
        seed: u64,
        bound: i64,
        clusters: usize,
    },
}

pub fn generate(spec: &GeneratorSpec) -> anyhow::Result<SiteSet> {
    match spec {
        GeneratorSpec::UniformGrid { n, seed, bound } => {
            check(*n >= 1, "n must be at least 1")?;
            check(*bound >= 1, "bound must be positive")?;
            let capacity = (*bound as u128 + 1).pow(2);
            check((*n as u128) <= capacity, "more points than grid cells")?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut chosen: BTreeSet<(i64, i64)> = BTreeSet::new();
            while chosen.len() < *n {
                chosen.insert((rng.gen_range(0..=*bound), rng.gen_range(0..=*bound)));
            }
            from_int_pairs(chosen)
        }
        GeneratorSpec::CocircularRational { n, radius } => {
            check(*n >= 1, "n must be at least 1")?;
            check(radius.is_positive(), "radius must be positive")?;
            let mut pts = Vec::with_capacity(*n);
            let mut ts = std::iter::once(0i64)
                .chain((1..).flat_map(|k| [k, -k]));
            for _ in 0..n - 1 {
                let t = Scalar::from(ts.next().expect("infinite sequence"));
                let denom = Scalar::one() + &t * &t;
                let x = radius * ((Scalar::one() - &t * &t) / &denom);
                let y = radius * ((Scalar::from(2) * &t) / &denom);
                pts.push(Point::new(x, y));
            }
            pts.push(Point::new(-radius, Scalar::zero()));
            Ok(SiteSet::new(pts)?)
        }
        GeneratorSpec::Lattice { side, bound } => {
            check(*side >= 1, "side must be at least 1")?;
            check(*bound >= 1, "bound must be positive")?;
            let step = if *side == 1 {
                Scalar::zero()
            } else {
                Scalar::ratio(*bound, *side as i64 - 1)
            };
            let mut pts = Vec::with_capacity(side * side);
            for i in 0..*side {
                for j in 0..*side {
                    pts.push(Point::new(
                        Scalar::from(i as i64) * &step,
                        Scalar::from(j as i64) * &step,
                    ));
                }
            }
            Ok(SiteSet::new(pts)?)
        }
        GeneratorSpec::Clustered {
            n,
            seed,
            bound,
            clusters,
        } => {
            check(*n >= 1, "n must be at least 1")?;
            check(*clusters >= 1, "clusters must be at least 1")?;
            check(*bound >= 1, "bound must be positive")?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let spread = (*bound / 10).max(1);
            let centers: Vec<(i64, i64)> = (0..*clusters)
                .map(|_| (rng.gen_range(0..=*bound), rng.gen_range(0..=*bound)))
                .collect();
            let mut chosen: BTreeSet<(i64, i64)> = BTreeSet::new();
            while chosen.len() < *n {
                let (cx, cy) = centers[rng.gen_range(0..centers.len())];
                chosen.insert((
                    cx + rng.gen_range(-spread..=spread),
                    cy + rng.gen_range(-spread..=spread),
                ));
            }
            from_int_pairs(chosen)
        }
    }
}

fn check(ok: bool, msg: &str) -> anyhow::Result<()> {
    if ok {
        Ok(())
    } else {
        bail!("invalid generator spec: {msg}");
    }
}

fn from_int_pairs(pairs: BTreeSet<(i64, i64)>) -> anyhow::Result<SiteSet> {
    let pts = pairs
        .into_iter()
        .map(|(x, y)| Point::from_ints(x, y))
        .collect();
    Ok(SiteSet::new(pts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use greedygeo::kernel::{in_circle, CirclePosition};

    #[test]
    fn four_cocircular_points_hit_the_axes() {
        let s = generate(&GeneratorSpec::CocircularRational {
            n: 4,
            radius: Scalar::one(),
        })
        .unwrap();
        let got: BTreeSet<(String, String)> = s
            .iter()
            .map(|p| (p.x.to_string(), p.y.to_string()))
            .collect();
        let want: BTreeSet<(String, String)> = [("1", "0"), ("0", "1"), ("0", "-1"), ("-1", "0")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn cocircular_output_is_cocircular() {
        let s = generate(&GeneratorSpec::CocircularRational {
            n: 9,
            radius: Scalar::ratio(7, 3),
        })
        .unwrap();
        // every 4th point against the first three
        for k in 3..s.len() {
            assert_eq!(
                in_circle(&s[0], &s[1], &s[2], &s[k]).unwrap(),
                CirclePosition::On
            );
        }
    }

    #[test]
    fn lattice_spans_the_square() {
        let s = generate(&GeneratorSpec::Lattice { side: 3, bound: 2 }).unwrap();
        assert_eq!(s.len(), 9);
        for x in 0..=2 {
            for y in 0..=2 {
                assert!(s.points().contains(&Point::from_ints(x, y)));
            }
        }
    }

    #[test]
    fn uniform_grid_is_deterministic() {
        let spec = GeneratorSpec::UniformGrid {
            n: 50,
            seed: 1,
            bound: 1_000_000,
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a.len(), 50);
        assert_eq!(a.points(), b.points());
    }

    #[test]
    fn clustered_produces_distinct_points() {
        let s = generate(&GeneratorSpec::Clustered {
            n: 40,
            seed: 9,
            bound: 100,
            clusters: 3,
        })
        .unwrap();
        assert_eq!(s.len(), 40);
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(generate(&GeneratorSpec::UniformGrid { n: 0, seed: 0, bound: 5 }).is_err());
        assert!(generate(&GeneratorSpec::UniformGrid { n: 100, seed: 0, bound: 3 }).is_err());
        assert!(generate(&GeneratorSpec::CocircularRational {
            n: 5,
            radius: Scalar::zero()
        })
        .is_err());
    }
}
