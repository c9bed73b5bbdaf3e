//! Structure documents: JSON with polynomial strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::exact::{
    parse_polynomial, parse_rational, parse_scalar, CMatrix, GaussianRational, PolyMatrix, Polynomial, Rational,
    Subspace, Variables,
};
use crate::normal_form::ProductChart;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Constant,
    Field,
}

/// A matrix or vector entry: a polynomial string or an integer.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Text(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Product chart `ℝ²(p, q) × ℝᵏ(r₁..r_k)`; `family` holds the two rows of
/// leaf-family cross terms `B(∂p, ∂r_j)`, `B(∂q, ∂r_j)`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub fiber_dim: usize,
    #[serde(default)]
    pub family: Option<Vec<Vec<Cell>>>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    pub kind: Kind,
    pub dimension: usize,
    /// Coordinate names; `x1..xd` when absent, `p, q, r1..rk` with a chart.
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub matrix: Vec<Vec<Cell>>,
    #[serde(default)]
    pub point: Option<Vec<Cell>>,
    /// Named real subspaces of `V`, each a list of spanning vectors.
    #[serde(default)]
    pub subspaces: BTreeMap<String, Vec<Vec<Cell>>>,
    #[serde(default)]
    pub chart: Option<ChartDoc>,
}

/// Malformed input; maps to exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// A parsed document; structure constraints are not yet validated.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub kind: Kind,
    pub dim: usize,
    pub vars: Arc<Variables>,
    pub matrix: PolyMatrix,
    pub point: Option<Vec<Rational>>,
    pub subspaces: BTreeMap<String, Subspace>,
    pub chart: Option<(ProductChart, Option<Vec<Vec<Polynomial>>>)>,
}

impl Loaded {
    /// The matrix with constant entries; `None` if some entry is not constant.
    pub fn constant_matrix(&self) -> Option<CMatrix> {
        if !(0..self.matrix.rows()).all(|i| self.matrix.row(i).iter().all(Polynomial::is_constant)) {
            return None;
        }
        Some(self.matrix.map(&GaussianRational::zero(), Polynomial::constant_term))
    }
}

pub fn parse_point(s: &str, dim: usize) -> Result<Vec<Rational>, InputError> {
    let cells: Vec<Cell> = s.split(',').map(|c| Cell::Text(c.trim().to_string())).collect();
    point_from_cells(&cells, dim)
}

fn point_from_cells(cells: &[Cell], dim: usize) -> Result<Vec<Rational>, InputError> {
    if cells.len() != dim {
        return Err(input_err(format!("point has {} coordinates, expected {dim}", cells.len())));
    }
    cells
        .iter()
        .map(|c| {
            let t = c.text();
            parse_rational(&t).ok_or_else(|| input_err(format!("point coordinate `{t}` is not a rational number")))
        })
        .collect()
}

impl StructureDoc {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| input_err(format!("invalid document: {e}")))
    }

    pub fn load(&self) -> Result<Loaded, InputError> {
        let d = self.dimension;
        let chart = match &self.chart {
            Some(c) => {
                if c.fiber_dim + 2 != d {
                    return Err(input_err(format!(
                        "chart of fiber dimension {} needs dimension {}",
                        c.fiber_dim,
                        c.fiber_dim + 2
                    )));
                }
                if self.variables.is_some() {
                    return Err(input_err("chart documents use the chart coordinates p, q, r1..rk"));
                }
                Some(ProductChart::new(c.fiber_dim))
            }
            None => None,
        };
        let vars = match (&chart, &self.variables) {
            (Some(c), _) => c.vars().clone(),
            (None, Some(names)) => {
                if names.len() != d {
                    return Err(input_err(format!("{} variable names for dimension {d}", names.len())));
                }
                Variables::new(names.clone())
            }
            (None, None) => Variables::coordinates(d),
        };
        if self.matrix.len() != 2 * d || self.matrix.iter().any(|r| r.len() != 2 * d) {
            return Err(input_err(format!("matrix must be {0}×{0} for dimension {d}", 2 * d)));
        }
        let z = Polynomial::zero(&vars);
        let mut rows = Vec::with_capacity(2 * d);
        for (i, row) in self.matrix.iter().enumerate() {
            let mut out = Vec::with_capacity(2 * d);
            for (j, cell) in row.iter().enumerate() {
                let text = cell.text();
                let p = match self.kind {
                    Kind::Constant => parse_scalar(&text).map(|c| Polynomial::constant(&vars, c)),
                    Kind::Field => parse_polynomial(&text, &vars),
                }
                .map_err(|e| input_err(format!("matrix entry ({i}, {j}) `{text}`: {e}")))?;
                out.push(p);
            }
            rows.push(out);
        }
        let matrix = PolyMatrix::from_rows(rows, &z).map_err(|e| input_err(e.to_string()))?;
        let point = self.point.as_ref().map(|p| point_from_cells(p, d)).transpose()?;
        let mut subspaces = BTreeMap::new();
        for (name, vectors) in &self.subspaces {
            let mut parsed = Vec::new();
            for v in vectors {
                if v.len() != d {
                    return Err(input_err(format!(
                        "subspace `{name}` has a vector of length {}, expected {d}",
                        v.len()
                    )));
                }
                let row = v
                    .iter()
                    .map(|c| parse_scalar(&c.text()).map_err(|e| input_err(format!("subspace `{name}`: {e}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                parsed.push(row);
            }
            subspaces.insert(name.clone(), Subspace::span(d, parsed));
        }
        let chart = match (chart, &self.chart) {
            (Some(c), Some(doc)) => {
                let family = match &doc.family {
                    None => None,
                    Some(rows) => {
                        if rows.len() != 2 || rows.iter().any(|r| r.len() != doc.fiber_dim) {
                            return Err(input_err(format!("chart family must be 2×{}", doc.fiber_dim)));
                        }
                        let parsed = rows
                            .iter()
                            .map(|r| {
                                r.iter()
                                    .map(|cell| {
                                        parse_polynomial(&cell.text(), c.vars())
                                            .map_err(|e| input_err(format!("chart family: {e}")))
                                    })
                                    .collect::<Result<Vec<_>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        Some(parsed)
                    }
                };
                Some((c, family))
            }
            _ => None,
        };
        Ok(Loaded { kind: self.kind, dim: d, vars, matrix, point, subspaces, chart })
    }
}
