//! The Desarguesian projective plane PG(2, q).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::field::{FieldError, FiniteField};

pub type Coords = [u32; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("coordinate {value} out of range for GF({q})")]
    Coordinate { value: u32, q: u32 },
    #[error("{0:?} is not a normalized homogeneous triple")]
    NotNormalized(Coords),
    #[error("malformed plane JSON: {0}")]
    Json(String),
}

/// The first violated plane axiom, with the least offending indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum PlaneViolation {
    Counts {
        points: usize,
        lines: usize,
        expected: usize,
    },
    /// Stored incidence disagrees with the coordinates.
    Incidence {
        point: usize,
        line: usize,
    },
    LineSize {
        line: usize,
        size: usize,
    },
    PointDegree {
        point: usize,
        degree: usize,
    },
    /// Two distinct points do not share exactly one line.
    Joining {
        points: [usize; 2],
        common_lines: usize,
    },
}

#[derive(Clone, PartialEq, Eq)]
pub struct ProjectivePlane {
    field: FiniteField,
    points: Vec<Coords>,
    lines: Vec<Coords>,
    // incidence[line * points + point]
    incidence: Vec<bool>,
}

impl std::fmt::Debug for ProjectivePlane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PG(2,{})", self.order())
    }
}

/// Normalized triples, first nonzero coordinate 1, in lexicographic order.
fn normalized_triples(q: u32) -> Vec<Coords> {
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    out.push([0, 0, 1]);
    for c in 0..q {
        out.push([0, 1, c]);
    }
    for b in 0..q {
        for c in 0..q {
            out.push([1, b, c]);
        }
    }
    out
}

fn is_normalized(t: &Coords) -> bool {
    t.iter().find(|&&c| c != 0) == Some(&1)
}

impl ProjectivePlane {
    pub fn build(q: u32) -> Result<Self, PlaneError> {
        Ok(Self::over(FiniteField::new(q)?))
    }

    pub fn over(field: FiniteField) -> Self {
        let triples = normalized_triples(field.order());
        Self::from_parts(field, triples.clone(), triples)
    }

    fn from_parts(field: FiniteField, points: Vec<Coords>, lines: Vec<Coords>) -> Self {
        let incidence = lines
            .iter()
            .flat_map(|l| {
                points
                    .iter()
                    .map(|p| dot(&field, p, l) == 0)
                    .collect::<Vec<_>>()
            })
            .collect();
        ProjectivePlane {
            field,
            points,
            lines,
            incidence,
        }
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn points(&self) -> &[Coords] {
        &self.points
    }

    pub fn lines(&self) -> &[Coords] {
        &self.lines
    }

    #[inline]
    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.incidence[line * self.points.len() + point]
    }

    /// Overrides one incidence bit, e.g. to build a damaged fixture.
    pub fn set_incidence(&mut self, point: usize, line: usize, on: bool) {
        let n = self.points.len();
        self.incidence[line * n + point] = on;
    }

    pub fn points_on(&self, line: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.points.len()).filter(move |&p| self.incident(p, line))
    }

    /// The line through two distinct points, by incidence.
    pub fn join(&self, p1: usize, p2: usize) -> Option<usize> {
        (0..self.lines.len()).find(|&l| self.incident(p1, l) && self.incident(p2, l))
    }

    /// Exhaustively checks the plane axioms.
    pub fn validate(&self) -> Result<(), PlaneViolation> {
        let q = self.order() as usize;
        let expected = q * q + q + 1;
        let (np, nl) = (self.points.len(), self.lines.len());
        if np != expected || nl != expected {
            return Err(PlaneViolation::Counts {
                points: np,
                lines: nl,
                expected,
            });
        }
        for point in 0..np {
            for line in 0..nl {
                let by_coords = dot(&self.field, &self.points[point], &self.lines[line]) == 0;
                if by_coords != self.incident(point, line) {
                    return Err(PlaneViolation::Incidence { point, line });
                }
            }
        }
        for line in 0..nl {
            let size = self.points_on(line).count();
            if size != q + 1 {
                return Err(PlaneViolation::LineSize { line, size });
            }
        }
        for point in 0..np {
            let degree = (0..nl).filter(|&l| self.incident(point, l)).count();
            if degree != q + 1 {
                return Err(PlaneViolation::PointDegree { point, degree });
            }
        }
        for p1 in 0..np {
            for p2 in p1 + 1..np {
                let common_lines = (0..nl)
                    .filter(|&l| self.incident(p1, l) && self.incident(p2, l))
                    .count();
                if common_lines != 1 {
                    return Err(PlaneViolation::Joining {
                        points: [p1, p2],
                        common_lines,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> PlaneJson {
        PlaneJson {
            q: self.order(),
            points: self.points.clone(),
            lines: self.lines.clone(),
        }
    }

    /// Rebuilds a plane from its dump; incidence is recomputed from the
    /// coordinates over the canonical field of that order.
    pub fn from_json(json: &PlaneJson) -> Result<Self, PlaneError> {
        let field = FiniteField::with_ceiling(json.q, json.q.max(super::DEFAULT_FIELD_CEILING))?;
        for t in json.points.iter().chain(&json.lines) {
            if let Some(&value) = t.iter().find(|&&c| c >= json.q) {
                return Err(PlaneError::Coordinate { value, q: json.q });
            }
            if !is_normalized(t) {
                return Err(PlaneError::NotNormalized(*t));
            }
        }
        Ok(Self::from_parts(
            field,
            json.points.clone(),
            json.lines.clone(),
        ))
    }
}

fn dot(f: &FiniteField, p: &Coords, l: &Coords) -> u32 {
    let mut acc = 0;
    for i in 0..3 {
        acc = f.add(acc, f.mul(p[i], l[i]));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneJson {
    pub q: u32,
    pub points: Vec<Coords>,
    pub lines: Vec<Coords>,
}
