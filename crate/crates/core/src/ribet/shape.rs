//! Relation-matrix shapes: which rows the presentation matrix has, which
//! places exist, and how the local generators are labeled.

use serde::{Deserialize, Serialize};

use super::RibetError;

/// One row of the presentation matrix `D`. Generator indices are 1-based;
/// dedicated local generators are referred to by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RowSpec {
    /// Linear relation `Σ ε_k ρ_k = 0`.
    I,
    /// Product relation `(ρ_i + ν_i) ρ_j = Σ δ_ijk ρ_k`.
    II { i: usize, j: usize },
    /// Local generator at the distinguished place.
    III { sigma: String },
    /// Inertia generator at a place of `P`.
    IV { place: String, sigma: String },
    /// Local generator at a place of `Σ` other than the distinguished one.
    V { place: String, sigma: String },
}

/// A place of `P` with its chosen local element `σ_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPlace {
    pub name: String,
    pub sigma: String,
}

/// Raw shape as read from a config file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    #[serde(default)]
    pub name: String,
    /// Number of generators not tied to any place.
    pub generic: usize,
    /// Whether the distinguished place `v₀` is present.
    #[serde(default)]
    pub v0: bool,
    /// Places of `Σ` other than `v₀`, in column order.
    #[serde(default)]
    pub sigma_places: Vec<String>,
    /// Places of `P`, in column order.
    #[serde(default)]
    pub places: Vec<PPlace>,
    pub rows: Vec<RowSpec>,
}

/// Where a generator comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenKind {
    Generic,
    /// `σ_v` of the given place of `P`.
    PlaceSigma(usize),
    /// Dedicated generator of the given row of `D`.
    Row(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    /// 1-based generator index, also the matrix slot in variable tables.
    pub index: usize,
    pub label: String,
    pub kind: GenKind,
}

/// A validated shape with generators numbered: generic ones first, then
/// `σ_v` for each place of `P`, then the dedicated generators of rows III, IV
/// and V in row order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibetShape {
    pub spec: ShapeSpec,
    pub generators: Vec<Generator>,
}

/// What a column of `E` stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    Place(usize),
    Gen(usize),
    Y(usize),
}

impl RibetShape {
    pub fn new(spec: ShapeSpec) -> Result<Self, RibetError> {
        let bad = |m: String| Err(RibetError::Shape(m));
        let mut gens: Vec<Generator> = (1..=spec.generic)
            .map(|i| Generator {
                index: i,
                label: i.to_string(),
                kind: GenKind::Generic,
            })
            .collect();
        let add = |label: &str, kind: GenKind, gens: &mut Vec<Generator>| -> Result<(), RibetError> {
            if !valid_label(label) {
                return Err(RibetError::Shape(format!("label '{label}' must be alphanumeric or '_'")));
            }
            if gens.iter().any(|g| g.label == label) {
                return Err(RibetError::Shape(format!("label '{label}' used twice")));
            }
            let index = gens.len() + 1;
            gens.push(Generator {
                index,
                label: label.to_string(),
                kind,
            });
            Ok(())
        };
        let mut names: Vec<&str> = Vec::new();
        for (k, p) in spec.places.iter().enumerate() {
            if names.contains(&p.name.as_str()) {
                return bad(format!("place '{}' listed twice", p.name));
            }
            names.push(&p.name);
            add(&p.sigma, GenKind::PlaceSigma(k), &mut gens)?;
        }
        for w in &spec.sigma_places {
            if names.contains(&w.as_str()) {
                return bad(format!("place '{w}' listed twice"));
            }
            names.push(w);
        }
        let mut pairs = Vec::new();
        for (k, row) in spec.rows.iter().enumerate() {
            match row {
                RowSpec::I => {}
                RowSpec::II { i, j } => {
                    if pairs.contains(&(*i, *j)) {
                        return bad(format!("duplicate type II row ({i},{j})"));
                    }
                    pairs.push((*i, *j));
                }
                RowSpec::III { sigma } => {
                    if !spec.v0 {
                        return bad("type III row without the distinguished place".into());
                    }
                    add(sigma, GenKind::Row(k), &mut gens)?;
                }
                RowSpec::IV { place, sigma } => {
                    if !spec.places.iter().any(|p| &p.name == place) {
                        return bad(format!("type IV row at '{place}', which is not in P"));
                    }
                    add(sigma, GenKind::Row(k), &mut gens)?;
                }
                RowSpec::V { place, sigma } => {
                    if !spec.sigma_places.contains(place) {
                        return bad(format!("type V row at '{place}', which is not in Σ∖{{v0}}"));
                    }
                    add(sigma, GenKind::Row(k), &mut gens)?;
                }
            }
        }
        let r = gens.len();
        if r == 0 {
            return bad("shape has no generators".into());
        }
        for &(i, j) in &pairs {
            if i == 0 || j == 0 || i > r || j > r {
                return bad(format!("type II indices ({i},{j}) outside 1..={r}"));
            }
        }
        for w in &spec.sigma_places {
            let used = spec
                .rows
                .iter()
                .any(|row| matches!(row, RowSpec::V { place, .. } if place == w));
            if !used {
                return bad(format!("place '{w}' has no type V rows"));
            }
        }
        let s = spec.sigma_places.len();
        if spec.rows.len() != r + s {
            return bad(format!(
                "D must be square: {} rows for {} generator and {} y columns",
                spec.rows.len(),
                r,
                s
            ));
        }
        Ok(RibetShape { spec, generators: gens })
    }

    pub fn from_toml(text: &str) -> Result<Self, RibetError> {
        let spec: ShapeSpec = toml::from_str(text).map_err(|e| RibetError::Shape(e.to_string()))?;
        RibetShape::new(spec)
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    /// Generator count `r`.
    pub fn r(&self) -> usize {
        self.generators.len()
    }

    /// Number of `y` columns.
    pub fn s(&self) -> usize {
        self.spec.sigma_places.len()
    }

    /// Number of places in `P`.
    pub fn t(&self) -> usize {
        self.spec.places.len()
    }

    pub fn size(&self) -> usize {
        self.r() + self.s() + self.t()
    }

    pub fn rows(&self) -> &[RowSpec] {
        &self.spec.rows
    }

    pub fn generator(&self, label: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.label == label)
    }

    pub fn index_of(&self, label: &str) -> usize {
        self.generator(label).expect("validated label").index
    }

    /// Generator index of `σ_v` for the `k`-th place of `P`.
    pub fn place_sigma(&self, k: usize) -> usize {
        self.index_of(&self.spec.places[k].sigma)
    }

    pub fn place_index(&self, name: &str) -> Option<usize> {
        self.spec.places.iter().position(|p| p.name == name)
    }

    pub fn sigma_place_index(&self, name: &str) -> Option<usize> {
        self.spec.sigma_places.iter().position(|p| p == name)
    }

    pub fn column(&self, c: Column) -> usize {
        match c {
            Column::Place(k) => k,
            Column::Gen(i) => self.t() + i - 1,
            Column::Y(k) => self.t() + self.r() + k,
        }
    }

    /// Generators whose `b` entry is deleted: the type III labels.
    pub fn b_v0(&self) -> Vec<usize> {
        self.spec
            .rows
            .iter()
            .filter_map(|row| match row {
                RowSpec::III { sigma } => Some(self.index_of(sigma)),
                _ => None,
            })
            .collect()
    }

    /// Generators carrying an `x_σ` variable: every `σ_v` and every type IV
    /// or V label.
    pub fn x_generators(&self) -> Vec<usize> {
        self.generators
            .iter()
            .filter(|g| match &g.kind {
                GenKind::PlaceSigma(_) => true,
                GenKind::Row(k) => matches!(self.spec.rows[*k], RowSpec::IV { .. } | RowSpec::V { .. }),
                GenKind::Generic => false,
            })
            .map(|g| g.index)
            .collect()
    }

    /// The sets `B_v` for places other than `v₀`: places of `P` first, then
    /// places of `Σ∖{v₀}`. Each entry is (place name, generator indices).
    pub fn local_sets(&self) -> Vec<(String, Vec<usize>)> {
        let mut out = Vec::new();
        for (k, p) in self.spec.places.iter().enumerate() {
            let mut set = vec![self.place_sigma(k)];
            for row in &self.spec.rows {
                if let RowSpec::IV { place, sigma } = row {
                    if place == &p.name {
                        set.push(self.index_of(sigma));
                    }
                }
            }
            out.push((p.name.clone(), set));
        }
        for w in &self.spec.sigma_places {
            let set = self
                .spec
                .rows
                .iter()
                .filter_map(|row| match row {
                    RowSpec::V { place, sigma } if place == w => Some(self.index_of(sigma)),
                    _ => None,
                })
                .collect();
            out.push((w.clone(), set));
        }
        out
    }

    /// 1-based ordinal of a type I row among the type I rows.
    pub fn type_i_ordinal(&self, row: usize) -> usize {
        self.spec.rows[..=row]
            .iter()
            .filter(|r| matches!(r, RowSpec::I))
            .count()
    }

    pub fn has_row_kind(&self, pred: impl Fn(&RowSpec) -> bool) -> bool {
        self.spec.rows.iter().any(pred)
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Shapes used throughout the tests and the harness.
pub mod corpus {
    use super::*;

    fn ii(i: usize, j: usize) -> RowSpec {
        RowSpec::II { i, j }
    }

    /// Two generators, two product rows, no places.
    pub fn two_product_rows() -> RibetShape {
        RibetShape::new(ShapeSpec {
            name: "two-product-rows".into(),
            generic: 2,
            v0: false,
            sigma_places: vec![],
            places: vec![],
            rows: vec![ii(1, 2), ii(2, 1)],
        })
        .expect("valid")
    }

    /// One place `v` of `P` with `B_v = {σ_v, σ}`, a linear row and one
    /// inertia row.
    pub fn one_inertia_row() -> RibetShape {
        RibetShape::new(ShapeSpec {
            name: "one-inertia-row".into(),
            generic: 0,
            v0: false,
            sigma_places: vec![],
            places: vec![PPlace {
                name: "v".into(),
                sigma: "sv".into(),
            }],
            rows: vec![
                RowSpec::I,
                RowSpec::IV {
                    place: "v".into(),
                    sigma: "s".into(),
                },
            ],
        })
        .expect("valid")
    }

    /// `Σ = {v₀, w}`: one type III row, two type V rows at `w`, a linear row
    /// and a product row.
    pub fn sigma_places() -> RibetShape {
        RibetShape::new(ShapeSpec {
            name: "sigma-places".into(),
            generic: 1,
            v0: true,
            sigma_places: vec!["w".into()],
            places: vec![],
            rows: vec![
                RowSpec::III { sigma: "t".into() },
                RowSpec::V {
                    place: "w".into(),
                    sigma: "s1".into(),
                },
                RowSpec::V {
                    place: "w".into(),
                    sigma: "s2".into(),
                },
                RowSpec::I,
                ii(1, 1),
            ],
        })
        .expect("valid")
    }

    /// All five row types at once.
    pub fn mixed() -> RibetShape {
        RibetShape::new(ShapeSpec {
            name: "mixed".into(),
            generic: 1,
            v0: true,
            sigma_places: vec!["w".into()],
            places: vec![PPlace {
                name: "v".into(),
                sigma: "sv".into(),
            }],
            rows: vec![
                RowSpec::I,
                ii(1, 2),
                RowSpec::III { sigma: "t".into() },
                RowSpec::IV {
                    place: "v".into(),
                    sigma: "s".into(),
                },
                RowSpec::V {
                    place: "w".into(),
                    sigma: "u".into(),
                },
                ii(2, 1),
            ],
        })
        .expect("valid")
    }

    /// Four generic generators plus one generator of each local kind:
    /// `r = 8`, `s = 1`, `t = 1`. Used for finite-field specializations.
    pub fn specialization() -> RibetShape {
        RibetShape::new(ShapeSpec {
            name: "specialization".into(),
            generic: 4,
            v0: true,
            sigma_places: vec!["w".into()],
            places: vec![PPlace {
                name: "v".into(),
                sigma: "sv".into(),
            }],
            rows: vec![
                RowSpec::IV {
                    place: "v".into(),
                    sigma: "s".into(),
                },
                RowSpec::III { sigma: "t".into() },
                RowSpec::V {
                    place: "w".into(),
                    sigma: "u".into(),
                },
                RowSpec::I,
                RowSpec::I,
                RowSpec::I,
                RowSpec::I,
                ii(1, 2),
                ii(2, 1),
            ],
        })
        .expect("valid")
    }

    /// One place of `P` and no inertia rows, so `det(E)` splits off the
    /// place row.
    pub fn place_without_inertia() -> RibetShape {
        RibetShape::new(ShapeSpec {
            name: "place-without-inertia".into(),
            generic: 2,
            v0: false,
            sigma_places: vec![],
            places: vec![PPlace {
                name: "v".into(),
                sigma: "sv".into(),
            }],
            rows: vec![RowSpec::I, ii(1, 2), ii(2, 1)],
        })
        .expect("valid")
    }

    /// Four generic generators and no places.
    pub fn four_generic() -> RibetShape {
        RibetShape::new(ShapeSpec {
            name: "four-generic".into(),
            generic: 4,
            v0: false,
            sigma_places: vec![],
            places: vec![],
            rows: vec![RowSpec::I, ii(1, 2), ii(2, 1), ii(3, 4)],
        })
        .expect("valid")
    }

    /// The shapes every symbolic check runs on.
    pub fn all() -> Vec<RibetShape> {
        vec![two_product_rows(), one_inertia_row(), sigma_places(), mixed()]
    }
}
