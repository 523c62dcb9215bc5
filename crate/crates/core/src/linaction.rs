//! The natural action of a matrix group on F_r² ∖ {0} and on the projective
//! line P¹(F_r).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matgroup::{Mat2, MatrixGroup};
use crate::modfield::PrimeModulus;

/// Orbits of a group on the nonzero vectors of F_r².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Vec<(u32, u32)>>,
}

impl OrbitDecomposition {
    /// Orbit sizes with multiplicities, keyed by size.
    pub fn size_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for o in &self.orbits {
            *out.entry(o.len()).or_insert(0) += 1;
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// Exact orbit partition of F_r² ∖ {0} under left multiplication.
pub fn orbits(g: &MatrixGroup) -> OrbitDecomposition {
    let n = g.modulus().get();
    let gens = g.effective_generators();
    let mut seen = vec![false; (n * n) as usize];
    seen[0] = true;
    let mut orbits = Vec::new();
    for start in 1..n * n {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        let mut orbit = vec![(start / n, start % n)];
        let mut i = 0;
        while i < orbit.len() {
            let v = orbit[i];
            for m in gens {
                let w = m.apply(v);
                let idx = (w.0 * n + w.1) as usize;
                if !seen[idx] {
                    seen[idx] = true;
                    orbit.push(w);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    OrbitDecomposition { orbits }
}

/// No non-identity element fixes a nonzero vector, i.e. `det(g − I) ≠ 0`
/// for every `g ≠ I`.
pub fn acts_freely(g: &MatrixGroup) -> bool {
    let id = Mat2::identity(g.modulus());
    let n = g.modulus().get();
    g.elements().iter().filter(|m| **m != id).all(|m| {
        let [a, b, c, d] = m.raw().map(u32::from);
        let am1 = (a + n - 1) % n;
        let dm1 = (d + n - 1) % n;
        (am1 * dm1 + n * n - b * c) % n != 0
    })
}

/// A point of P¹(F_r), normalized to `(1 : y)` or `(0 : 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub x: u32,
    pub y: u32,
}

impl ProjectivePoint {
    pub fn normalize(v: (u32, u32), r: PrimeModulus) -> ProjectivePoint {
        assert!(v != (0, 0), "zero vector spans no line");
        if v.0 == 0 {
            ProjectivePoint { x: 0, y: 1 }
        } else {
            let inv = r.element(v.0 as i64).inverse().unwrap();
            ProjectivePoint { x: 1, y: (r.element(v.1 as i64) * inv).value() }
        }
    }

    pub fn all(r: PrimeModulus) -> Vec<ProjectivePoint> {
        let mut v: Vec<ProjectivePoint> = (0..r.get()).map(|y| ProjectivePoint { x: 1, y }).collect();
        v.push(ProjectivePoint { x: 0, y: 1 });
        v
    }

    /// Index in `0..=r`: `(1 : y) ↦ y`, `(0 : 1) ↦ r`.
    pub fn index(self, r: PrimeModulus) -> usize {
        if self.x == 0 {
            r.get() as usize
        } else {
            self.y as usize
        }
    }

    pub fn image(self, m: &Mat2) -> ProjectivePoint {
        ProjectivePoint::normalize(m.apply((self.x, self.y)), m.modulus())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.x, self.y)
    }
}

/// Lines of F_r² stabilized by every element of the group.
pub fn fixed_lines(g: &MatrixGroup) -> Vec<ProjectivePoint> {
    let gens = g.effective_generators();
    ProjectivePoint::all(g.modulus())
        .into_iter()
        .filter(|p| gens.iter().all(|m| p.image(m) == *p))
        .collect()
}

pub fn is_irreducible(g: &MatrixGroup) -> bool {
    fixed_lines(g).is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ProjectiveClass {
    #[serde(rename = "cyclic")]
    Cyclic,
    #[serde(rename = "dihedral")]
    Dihedral,
    A4,
    S4,
    A5,
    PSL2,
    PGL2,
    #[serde(rename = "other")]
    Other,
}

impl fmt::Display for ProjectiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProjectiveClass::Cyclic => "cyclic",
            ProjectiveClass::Dihedral => "dihedral",
            ProjectiveClass::A4 => "A4",
            ProjectiveClass::S4 => "S4",
            ProjectiveClass::A5 => "A5",
            ProjectiveClass::PSL2 => "PSL2",
            ProjectiveClass::PGL2 => "PGL2",
            ProjectiveClass::Other => "other",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveImageType {
    pub order: usize,
    pub class: ProjectiveClass,
}

/// A permutation of `0..n`, stored as the image list.
pub type Perm = Vec<u16>;

pub fn perm_compose(a: &Perm, b: &Perm) -> Perm {
    // (a ∘ b)(i) = a(b(i))
    b.iter().map(|&i| a[i as usize]).collect()
}

pub fn perm_order(p: &Perm) -> usize {
    let id: Perm = (0..p.len() as u16).collect();
    let mut x = p.clone();
    let mut k = 1;
    while x != id {
        x = perm_compose(p, &x);
        k += 1;
    }
    k
}

/// The image of G in PGL₂(F_r), realized faithfully as permutations of the
/// r + 1 points of P¹(F_r).
pub fn projective_permutations(g: &MatrixGroup) -> Vec<Perm> {
    let r = g.modulus();
    let pts = ProjectivePoint::all(r);
    let set: BTreeSet<Perm> = g
        .elements()
        .iter()
        .map(|m| pts.iter().map(|p| p.image(m).index(r) as u16).collect())
        .collect();
    set.into_iter().collect()
}

fn classify(perms: &[Perm], r: PrimeModulus) -> ProjectiveClass {
    let order = perms.len();
    let n = r.get() as usize;
    if order == n * (n * n - 1) {
        return ProjectiveClass::PGL2;
    }
    if order == n * (n * n - 1) / 2 {
        return ProjectiveClass::PSL2;
    }
    let orders: Vec<usize> = perms.iter().map(perm_order).collect();
    if orders.iter().any(|&o| o == order) {
        return ProjectiveClass::Cyclic;
    }
    if order % 2 == 0 {
        let half = order / 2;
        if let Some(c) = perms.iter().zip(&orders).find(|(_, &o)| o == half).map(|(p, _)| p) {
            let mut rotations = BTreeSet::new();
            let mut x = c.clone();
            for _ in 0..half {
                rotations.insert(x.clone());
                x = perm_compose(c, &x);
            }
            let reflections_ok = perms
                .iter()
                .zip(&orders)
                .filter(|(p, _)| !rotations.contains(*p))
                .all(|(_, &o)| o == 2);
            if reflections_ok {
                return ProjectiveClass::Dihedral;
            }
        }
    }
    let center = perms
        .iter()
        .filter(|z| perms.iter().all(|p| perm_compose(z, p) == perm_compose(p, z)))
        .count();
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    match order {
        12 if !orders.contains(&6) => ProjectiveClass::A4,
        24 if center == 1 && involutions == 9 => ProjectiveClass::S4,
        60 if center == 1 && involutions == 15 => ProjectiveClass::A5,
        _ => ProjectiveClass::Other,
    }
}

/// Order and isomorphism class of G / (G ∩ scalars).
pub fn projective_image(g: &MatrixGroup) -> ProjectiveImageType {
    let perms = projective_permutations(g);
    let class = classify(&perms, g.modulus());
    ProjectiveImageType { order: perms.len(), class }
}
