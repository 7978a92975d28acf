//! Combinatorics of the forcing mode set: the generator condition and the
//! saturation recursion that spreads noise directions across the lattice.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Flags for the three clauses of the generator condition.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct ConditionFlags {
    /// `-Z0 = Z0`.
    pub symmetric: bool,
    /// Integer combinations of `Z0` reach all of `Z^2`.
    pub generates_lattice: bool,
    /// Some pair `m, n` is non-parallel with `|m| != |n|`.
    pub nonparallel_unequal_moduli: bool,
}

impl ConditionFlags {
    pub fn all(&self) -> bool {
        self.symmetric && self.generates_lattice && self.nonparallel_unequal_moduli
    }
}

/// Report of the saturation recursion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub z0: Vec<[i64; 2]>,
    pub flags: ConditionFlags,
    /// Newly produced modes per level (level 0 is `Z0` itself).
    pub levels: Vec<Vec<[i64; 2]>>,
    /// First level at which all `0 < |k| <= cutoff` are covered, if any.
    pub saturation_level: Option<usize>,
    /// Modes with `|k| <= cutoff` still uncovered after the last level.
    pub uncovered: Vec<[i64; 2]>,
    /// True when the recursion produced points beyond the clip bound
    /// (results may then be incomplete; the bound is configurable).
    pub clipped: bool,
    pub cutoff: usize,
    pub clip_bound: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Checks symmetry, the integer-generator property and the non-parallel /
/// unequal-moduli clause.
pub fn check_condition(z0: &[[i64; 2]]) -> ConditionFlags {
    let set: BTreeSet<[i64; 2]> = z0.iter().copied().collect();
    let symmetric = !set.is_empty() && set.iter().all(|k| set.contains(&[-k[0], -k[1]]));

    // Z0 generates Z^2 over the integers iff the gcd of all 2x2 minors of
    // the matrix with columns Z0 is 1 (and the set has rank 2).
    let v: Vec<[i64; 2]> = set.iter().copied().collect();
    let mut minor_gcd = 0i64;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            let det = v[i][0] * v[j][1] - v[i][1] * v[j][0];
            minor_gcd = gcd(minor_gcd, det);
        }
    }
    let generates_lattice = minor_gcd == 1;

    let mut nonparallel_unequal = false;
    'outer: for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            let cross = v[i][0] * v[j][1] - v[i][1] * v[j][0];
            let mi = v[i][0] * v[i][0] + v[i][1] * v[i][1];
            let mj = v[j][0] * v[j][0] + v[j][1] * v[j][1];
            if cross != 0 && mi != mj {
                nonparallel_unequal = true;
                break 'outer;
            }
        }
    }

    ConditionFlags {
        symmetric,
        generates_lattice,
        nonparallel_unequal_moduli: nonparallel_unequal,
    }
}

/// Runs the saturation recursion
/// `Z_n = { i + j : j in Z0, i in Z_{n-1}, <i_perp, j> != 0, |i| != |j| }`
/// and reports the first level covering `{0 < |k| <= cutoff}`.
pub fn saturate(z0: &[[i64; 2]], cutoff: usize, max_levels: usize, clip_factor: i64) -> GeneratorReport {
    let flags = check_condition(z0);
    let clip_bound = clip_factor * cutoff as i64;
    let z0set: BTreeSet<[i64; 2]> = z0.iter().copied().collect();

    let targets: Vec<[i64; 2]> = {
        let c = cutoff as i64;
        let mut t = Vec::new();
        for k1 in -c..=c {
            for k2 in -c..=c {
                if (k1 != 0 || k2 != 0) && k1 * k1 + k2 * k2 <= c * c {
                    t.push([k1, k2]);
                }
            }
        }
        t
    };

    let mut covered: BTreeSet<[i64; 2]> = z0set.clone();
    let mut levels: Vec<Vec<[i64; 2]>> = vec![z0set.iter().copied().collect()];
    let mut frontier = z0set.clone();
    let mut clipped = false;
    let mut saturation_level = None;

    let is_saturated = |cov: &BTreeSet<[i64; 2]>| targets.iter().all(|k| cov.contains(k));
    if is_saturated(&covered) {
        saturation_level = Some(0);
    }

    for level in 1..=max_levels {
        if saturation_level.is_some() {
            break;
        }
        let mut next = BTreeSet::new();
        for &i in &frontier {
            let mi = i[0] * i[0] + i[1] * i[1];
            for &j in &z0set {
                let mj = j[0] * j[0] + j[1] * j[1];
                // <i_perp, j> with i_perp = (i2, -i1); only the zero test
                // matters, which is sign-convention independent.
                let iperp_dot_j = i[1] * j[0] - i[0] * j[1];
                if iperp_dot_j == 0 || mi == mj {
                    continue;
                }
                let s = [i[0] + j[0], i[1] + j[1]];
                if s == [0, 0] {
                    continue;
                }
                if s[0].abs() > clip_bound || s[1].abs() > clip_bound {
                    clipped = true;
                    continue;
                }
                if !covered.contains(&s) {
                    next.insert(s);
                }
            }
        }
        if next.is_empty() {
            levels.push(Vec::new());
            break;
        }
        covered.extend(next.iter().copied());
        levels.push(next.iter().copied().collect());
        frontier = next;
        if is_saturated(&covered) {
            saturation_level = Some(level);
        }
    }

    let uncovered = targets
        .iter()
        .copied()
        .filter(|k| !covered.contains(k))
        .collect();

    GeneratorReport {
        z0: z0.to_vec(),
        flags,
        levels,
        saturation_level,
        uncovered,
        clipped,
        cutoff,
        clip_bound,
    }
}

/// The four-mode example set from the generator condition.
pub fn example_z0() -> Vec<[i64; 2]> {
    vec![[1, 0], [-1, 0], [1, 1], [-1, -1]]
}
