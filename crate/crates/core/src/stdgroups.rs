//! Named subgroups of GL₂(F_r): Borel, split and non-split Cartan groups and
//! their normalizers, the cube subgroup of the non-split Cartan normalizer,
//! the cube-ratio subgroup of the split Cartan normalizer, and the two
//! exceptional groups given by explicit generators (mod 13 and mod 5).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matgroup::{gl2_elements, GroupError, Mat2, MatrixGroup};
use crate::modfield::{epsilon, is_cube, FieldElement, PrimeModulus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StdGroupError {
    #[error("group {kind} is only defined for r = {required}, not {got}")]
    KindModulusMismatch { kind: StandardGroupKind, required: u32, got: u32 },
    #[error("group {kind} needs r ≡ 1 (mod 3); got r = {got}")]
    CongruenceViolation { kind: StandardGroupKind, got: u32 },
    #[error("group {0} has no closed-form description")]
    NoClosedForm(StandardGroupKind),
    #[error("unknown group kind {0:?}")]
    UnknownKind(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardGroupKind {
    Borel,
    SplitCartan,
    SplitCartanNormalizer,
    NonsplitCartan,
    NonsplitCartanNormalizer,
    /// Cubes of the non-split Cartan, extended by `diag(1, −1)`.
    G3,
    /// The mod-13 group with projective image S₄, from four generators.
    G7_13,
    /// The mod-5 group with projective image S₄, from four generators.
    G95_5,
    /// Diagonal and antidiagonal matrices with entry ratio a cube.
    CubeSplit,
}

impl StandardGroupKind {
    pub const ALL: [StandardGroupKind; 9] = [
        StandardGroupKind::Borel,
        StandardGroupKind::SplitCartan,
        StandardGroupKind::SplitCartanNormalizer,
        StandardGroupKind::NonsplitCartan,
        StandardGroupKind::NonsplitCartanNormalizer,
        StandardGroupKind::G3,
        StandardGroupKind::G7_13,
        StandardGroupKind::G95_5,
        StandardGroupKind::CubeSplit,
    ];

    /// Stable short tag used on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            StandardGroupKind::Borel => "borel",
            StandardGroupKind::SplitCartan => "cs",
            StandardGroupKind::SplitCartanNormalizer => "cs+",
            StandardGroupKind::NonsplitCartan => "cns",
            StandardGroupKind::NonsplitCartanNormalizer => "cns+",
            StandardGroupKind::G3 => "g3",
            StandardGroupKind::G7_13 => "g7",
            StandardGroupKind::G95_5 => "g95",
            StandardGroupKind::CubeSplit => "cube",
        }
    }

    pub fn has_closed_form(self) -> bool {
        !matches!(self, StandardGroupKind::G7_13 | StandardGroupKind::G95_5)
    }
}

impl fmt::Display for StandardGroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StandardGroupKind {
    type Err = StdGroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k = match s {
            "borel" => StandardGroupKind::Borel,
            "cs" | "split_cartan" => StandardGroupKind::SplitCartan,
            "cs+" | "split_cartan_normalizer" => StandardGroupKind::SplitCartanNormalizer,
            "cns" | "nonsplit_cartan" => StandardGroupKind::NonsplitCartan,
            "cns+" | "nonsplit_cartan_normalizer" => StandardGroupKind::NonsplitCartanNormalizer,
            "g3" => StandardGroupKind::G3,
            "g7" | "g7_13" => StandardGroupKind::G7_13,
            "g95" | "g95_5" => StandardGroupKind::G95_5,
            "cube" | "cube_split" => StandardGroupKind::CubeSplit,
            other => return Err(StdGroupError::UnknownKind(other.to_string())),
        };
        Ok(k)
    }
}

fn check_modulus(kind: StandardGroupKind, r: PrimeModulus) -> Result<(), StdGroupError> {
    let n = r.get();
    let fixed = match kind {
        StandardGroupKind::G7_13 => Some(13),
        StandardGroupKind::G95_5 => Some(5),
        _ => None,
    };
    if let Some(required) = fixed {
        if n != required {
            return Err(StdGroupError::KindModulusMismatch { kind, required, got: n });
        }
    }
    if kind == StandardGroupKind::CubeSplit && n % 3 != 1 {
        return Err(StdGroupError::CongruenceViolation { kind, got: n });
    }
    Ok(())
}

fn m(e: [i64; 4], r: PrimeModulus) -> Mat2 {
    Mat2::new(e, r).expect("generator is invertible")
}

/// `[[a, εb], [b, a]]`.
fn ns_element(a: FieldElement, b: FieldElement) -> Option<Mat2> {
    let eps = epsilon(a.modulus());
    Mat2::new([a.value() as i64, (eps * b).value() as i64, b.value() as i64, a.value() as i64], a.modulus()).ok()
}

fn nonsplit_cartan_set(r: PrimeModulus) -> Vec<Mat2> {
    r.elements()
        .flat_map(|a| r.elements().map(move |b| (a, b)))
        .filter_map(|(a, b)| ns_element(a, b))
        .collect()
}

/// A generator of the cyclic group C_ns(r).
pub fn nonsplit_cartan_generator(r: PrimeModulus) -> Mat2 {
    let n = r.get() as u64;
    nonsplit_cartan_set(r)
        .into_iter()
        .find(|x| x.order() == n * n - 1)
        .expect("C_ns(r) is cyclic")
}

fn closed_form_elements(kind: StandardGroupKind, r: PrimeModulus) -> Result<Vec<Mat2>, StdGroupError> {
    check_modulus(kind, r)?;
    let all = || gl2_elements(r).into_iter();
    let out: Vec<Mat2> = match kind {
        StandardGroupKind::Borel => all().filter(|x| x.raw()[2] == 0).collect(),
        StandardGroupKind::SplitCartan => all().filter(|x| x.raw()[1] == 0 && x.raw()[2] == 0).collect(),
        StandardGroupKind::SplitCartanNormalizer => all()
            .filter(|x| {
                let e = x.raw();
                (e[1] == 0 && e[2] == 0) || (e[0] == 0 && e[3] == 0)
            })
            .collect(),
        StandardGroupKind::NonsplitCartan => nonsplit_cartan_set(r),
        StandardGroupKind::NonsplitCartanNormalizer => {
            let eps = epsilon(r);
            let mut v = nonsplit_cartan_set(r);
            for c in r.elements() {
                for d in r.elements() {
                    if let Ok(x) = Mat2::new(
                        [c.value() as i64, (eps * d).value() as i64, (-d).value() as i64, (-c).value() as i64],
                        r,
                    ) {
                        v.push(x);
                    }
                }
            }
            v
        }
        StandardGroupKind::G3 => {
            let flip = m([1, 0, 0, -1], r);
            let mut v: Vec<Mat2> = nonsplit_cartan_set(r).into_iter().map(|a| a.pow(3)).collect();
            let twisted: Vec<Mat2> = v.iter().map(|a| flip.mul(a)).collect();
            v.extend(twisted);
            v
        }
        StandardGroupKind::CubeSplit => all()
            .filter(|x| {
                let [a, b, c, d] = x.entries();
                if b.is_zero() && c.is_zero() {
                    is_cube(a * d.inverse().unwrap()).unwrap_or(false)
                } else if a.is_zero() && d.is_zero() {
                    is_cube(b * c.inverse().unwrap()).unwrap_or(false)
                } else {
                    false
                }
            })
            .collect(),
        StandardGroupKind::G7_13 | StandardGroupKind::G95_5 => {
            return Err(StdGroupError::NoClosedForm(kind));
        }
    };
    let mut out = out;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// The generators each group is "naturally" built from.
pub fn natural_generators(kind: StandardGroupKind, r: PrimeModulus) -> Result<Vec<Mat2>, StdGroupError> {
    check_modulus(kind, r)?;
    let g = r.primitive_root().value() as i64;
    let gens = match kind {
        StandardGroupKind::Borel => vec![m([g, 0, 0, 1], r), m([1, 0, 0, g], r), m([1, 1, 0, 1], r)],
        StandardGroupKind::SplitCartan => vec![m([g, 0, 0, 1], r), m([1, 0, 0, g], r)],
        StandardGroupKind::SplitCartanNormalizer => {
            vec![m([g, 0, 0, 1], r), m([1, 0, 0, g], r), m([0, 1, 1, 0], r)]
        }
        StandardGroupKind::NonsplitCartan => vec![nonsplit_cartan_generator(r)],
        StandardGroupKind::NonsplitCartanNormalizer => {
            vec![nonsplit_cartan_generator(r), m([1, 0, 0, -1], r)]
        }
        StandardGroupKind::G3 => vec![nonsplit_cartan_generator(r).pow(3), m([1, 0, 0, -1], r)],
        StandardGroupKind::CubeSplit => {
            vec![m([g, 0, 0, g], r), m([g * g * g, 0, 0, 1], r), m([0, 1, 1, 0], r)]
        }
        StandardGroupKind::G7_13 => vec![
            m([2, 0, 0, 2], r),
            m([2, 0, 0, 3], r),
            m([0, -1, 1, 0], r),
            m([1, 1, -1, 1], r),
        ],
        StandardGroupKind::G95_5 => vec![
            m([2, 0, 0, 1], r),
            m([1, 0, 0, 2], r),
            m([0, -1, 1, 0], r),
            m([1, 1, 1, -1], r),
        ],
    };
    Ok(gens)
}

/// The named group as an explicit element set.
pub fn standard_group(kind: StandardGroupKind, r: PrimeModulus) -> Result<MatrixGroup, StdGroupError> {
    if kind.has_closed_form() {
        let elements = closed_form_elements(kind, r)?;
        Ok(MatrixGroup::from_elements(r, elements)?)
    } else {
        Ok(MatrixGroup::close(&natural_generators(kind, r)?)?)
    }
}

/// Closure of the natural generators equals the element-by-element set.
pub fn verify_membership_formula(kind: StandardGroupKind, r: PrimeModulus) -> Result<bool, StdGroupError> {
    let set = closed_form_elements(kind, r)?;
    let closed = MatrixGroup::close(&natural_generators(kind, r)?)?;
    Ok(closed.elements() == set.as_slice())
}

/// `{diag(a, a⁻¹)} ∪ {antidiag(a, −a⁻¹)}`, the standard shape of the
/// determinant-one part of the split Cartan normalizer.
pub fn sl2_split_normalizer_model(r: PrimeModulus) -> MatrixGroup {
    let mut v = Vec::new();
    for a in r.units() {
        let ai = a.inverse().unwrap();
        v.push(Mat2::diag(a, ai).unwrap());
        v.push(Mat2::antidiag(a, -ai).unwrap());
    }
    MatrixGroup::from_elements(r, v).expect("model set is a group")
}
