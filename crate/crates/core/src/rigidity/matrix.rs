//! Realizations and rigidity matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::exact;
use super::field::{self, Echelon};
use super::RigidityError;
use crate::graph::Graph;

/// Half-width of the integer box sampled for exact (rational) realizations.
pub const INTEGER_SAMPLE_BOUND: i64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldChoice {
    Prime(u64),
    /// Exact arithmetic; coordinates are integers.
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coordinates {
    Modular { prime: u64, values: Vec<u64> },
    Integer(Vec<i64>),
}

/// A map `p : V -> F^d`, stored vertex-major (`d` values per vertex).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    d: usize,
    coords: Coordinates,
}

impl Realization {
    pub fn modular(d: usize, prime: u64, values: Vec<u64>) -> Result<Self, RigidityError> {
        Self::check_len(d, values.len())?;
        let values = values.into_iter().map(|x| x % prime).collect();
        Ok(Realization { d, coords: Coordinates::Modular { prime, values } })
    }

    pub fn integer(d: usize, values: Vec<i64>) -> Result<Self, RigidityError> {
        Self::check_len(d, values.len())?;
        Ok(Realization { d, coords: Coordinates::Integer(values) })
    }

    fn check_len(d: usize, len: usize) -> Result<(), RigidityError> {
        if d == 0 || !len.is_multiple_of(d) {
            return Err(RigidityError::DimensionMismatch { expected: d, found: len });
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.len() / self.d
    }

    pub fn len(&self) -> usize {
        match &self.coords {
            Coordinates::Modular { values, .. } => values.len(),
            Coordinates::Integer(values) => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.coords
    }

    /// The same integer point viewed in `Z/pZ`. Modular realizations are
    /// returned unchanged when the prime already matches.
    pub fn reduce_mod(&self, prime: u64) -> Realization {
        let values = match &self.coords {
            Coordinates::Integer(v) => v.iter().map(|&x| field::from_i64(x, prime)).collect(),
            Coordinates::Modular { values, .. } => values.iter().map(|&x| x % prime).collect(),
        };
        Realization { d: self.d, coords: Coordinates::Modular { prime, values } }
    }
}

/// Independent uniform coordinates: the full residue range for a prime
/// field, `[-INTEGER_SAMPLE_BOUND, INTEGER_SAMPLE_BOUND]` for exact mode.
pub fn random_realization(g: &Graph, d: usize, seed: u64, field: FieldChoice) -> Realization {
    assert!(d >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = g.n() * d;
    match field {
        FieldChoice::Prime(prime) => {
            let values = (0..len).map(|_| rng.gen_range(0..prime)).collect();
            Realization { d, coords: Coordinates::Modular { prime, values } }
        }
        FieldChoice::Rational => {
            let values = (0..len)
                .map(|_| rng.gen_range(-INTEGER_SAMPLE_BOUND..=INTEGER_SAMPLE_BOUND))
                .collect();
            Realization { d, coords: Coordinates::Integer(values) }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entries {
    Modular { prime: u64, data: Vec<u64> },
    Integer(Vec<i64>),
}

/// `R(G, p)`: one row per edge (in [`Graph::edges`] order), `d` columns per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl RigidityMatrix {
    pub fn new(g: &Graph, p: &Realization) -> Result<Self, RigidityError> {
        if p.n() != g.n() {
            return Err(RigidityError::DimensionMismatch {
                expected: g.n() * p.d(),
                found: p.len(),
            });
        }
        let d = p.d();
        let edges = g.edges();
        let rows = edges.len();
        let cols = d * g.n();
        let entries = match p.coordinates() {
            Coordinates::Modular { prime, values } => {
                let mut data = vec![0u64; rows * cols];
                for (r, &(i, j)) in edges.iter().enumerate() {
                    for k in 0..d {
                        let diff = field::sub_mod(values[i * d + k], values[j * d + k], *prime);
                        data[r * cols + i * d + k] = diff;
                        data[r * cols + j * d + k] = field::sub_mod(0, diff, *prime);
                    }
                }
                Entries::Modular { prime: *prime, data }
            }
            Coordinates::Integer(values) => {
                let mut data = vec![0i64; rows * cols];
                for (r, &(i, j)) in edges.iter().enumerate() {
                    for k in 0..d {
                        let diff = values[i * d + k] - values[j * d + k];
                        data[r * cols + i * d + k] = diff;
                        data[r * cols + j * d + k] = -diff;
                    }
                }
                Entries::Integer(data)
            }
        };
        Ok(RigidityMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        match &self.entries {
            Entries::Modular { prime, data } => field::rank_mod(self.rows, self.cols, data, *prime),
            Entries::Integer(data) => exact::rank_integer(self.rows, self.cols, data),
        }
    }

    /// Row reduction with a left-kernel basis. Modular matrices only.
    pub fn echelon(&self) -> Option<Echelon> {
        match &self.entries {
            Entries::Modular { prime, data } => {
                Some(field::echelon(self.rows, self.cols, data, *prime, true))
            }
            Entries::Integer(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bar_in_the_plane() {
        let g = Graph::complete(2).unwrap();
        let p = Realization::integer(2, vec![0, 0, 1, 0]).unwrap();
        let r = RigidityMatrix::new(&g, &p).unwrap();
        assert_eq!((r.rows(), r.cols()), (1, 4));
        assert_eq!(r.entries(), &Entries::Integer(vec![-1, 0, 1, 0]));
    }

    #[test]
    fn constant_realization_gives_zero_matrix() {
        let g = Graph::complete(5).unwrap();
        let p = Realization::modular(3, 101, [7, 8, 9].repeat(5)).unwrap();
        let r = RigidityMatrix::new(&g, &p).unwrap();
        match r.entries() {
            Entries::Modular { data, .. } => assert!(data.iter().all(|&x| x == 0)),
            _ => unreachable!(),
        }
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn rows_are_blockwise_antisymmetric() {
        let g = Graph::complete(4).unwrap();
        let p = random_realization(&g, 3, 4, FieldChoice::Rational);
        let r = RigidityMatrix::new(&g, &p).unwrap();
        let Entries::Integer(data) = r.entries() else { unreachable!() };
        for (row, (i, j)) in g.edges().into_iter().enumerate() {
            let nonzero = (0..r.cols()).filter(|&c| data[row * r.cols() + c] != 0).count();
            assert!(nonzero <= 6);
            for k in 0..3 {
                assert_eq!(data[row * r.cols() + i * 3 + k], -data[row * r.cols() + j * 3 + k]);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let g = Graph::complete(3).unwrap();
        let p = Realization::integer(2, vec![0; 4]).unwrap();
        assert!(matches!(
            RigidityMatrix::new(&g, &p),
            Err(RigidityError::DimensionMismatch { .. })
        ));
        assert!(Realization::integer(2, vec![0; 3]).is_err());
    }

    #[test]
    fn realization_sampling() {
        let g = Graph::complete(8).unwrap();
        let field = FieldChoice::Prime(field::DEFAULT_PRIME);
        let a = random_realization(&g, 3, 42, field);
        assert_eq!(a.len(), 24);
        assert_eq!(a, random_realization(&g, 3, 42, field));
        assert_ne!(a, random_realization(&g, 3, 43, field));
    }
}
