//! Permutation groups stored as a stabilizer chain (base and strong
//! generating set) with exact big-integer orders.

use num_bigint::BigUint;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::VertexPermutation;

#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    /// Indices into `strong` of the generators fixing every earlier base point.
    gens: Vec<usize>,
    /// Orbit of the base point, in discovery order.
    orbit: Vec<usize>,
    /// For each point of the orbit, an element mapping the base point to it and its inverse.
    reps: Vec<Option<(VertexPermutation, VertexPermutation)>>,
}

/// A permutation group of degree `n`.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<VertexPermutation>,
    strong: Vec<VertexPermutation>,
    levels: Vec<Level>,
    order: BigUint,
}

fn first_moved(p: &VertexPermutation) -> Option<usize> {
    (0..p.degree()).find(|&i| p.apply(i) != i)
}

fn build_level(degree: usize, base_point: usize, strong: &[VertexPermutation], gens: Vec<usize>) -> Level {
    let mut reps: Vec<Option<(VertexPermutation, VertexPermutation)>> = vec![None; degree];
    let id = VertexPermutation::identity(degree);
    reps[base_point] = Some((id.clone(), id));
    let mut orbit = vec![base_point];
    let mut i = 0;
    while i < orbit.len() {
        let x = orbit[i];
        for &g in &gens {
            let y = strong[g].apply(x);
            if reps[y].is_none() {
                let u = reps[x].as_ref().expect("orbit points have representatives").0.then(&strong[g]);
                let inv = u.inverse();
                reps[y] = Some((u, inv));
                orbit.push(y);
            }
        }
        i += 1;
    }
    Level {
        base_point,
        gens,
        orbit,
        reps,
    }
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
            strong: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        }
    }

    /// The group generated by `gens`, via deterministic Schreier–Sims.
    pub fn from_generators(degree: usize, gens: Vec<VertexPermutation>) -> Result<PermGroup> {
        PermGroup::with_base_prefix(degree, gens, &[], None)
    }

    /// Schreier–Sims with a prescribed start of the base. When the group order
    /// is already known, the construction stops as soon as the chain reaches it.
    pub fn with_base_prefix(
        degree: usize,
        gens: Vec<VertexPermutation>,
        prefix: &[usize],
        known_order: Option<&BigUint>,
    ) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidArgument(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        if let Some(&b) = prefix.iter().find(|&&b| b >= degree) {
            return Err(Error::InvalidArgument(format!("base point {b} out of range")));
        }
        let mut base: Vec<usize> = prefix.to_vec();
        let mut strong: Vec<VertexPermutation> = Vec::new();
        for g in &gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        for s in &strong {
            if base.iter().all(|&b| s.apply(b) == b) {
                base.push(first_moved(s).expect("non-identity"));
            }
        }
        let fixes_prefix = |s: &VertexPermutation, base: &[usize], i: usize| base[..i].iter().all(|&b| s.apply(b) == b);
        let mut levels: Vec<Level> = (0..base.len())
            .map(|i| {
                let gens = (0..strong.len()).filter(|&s| fixes_prefix(&strong[s], &base, i)).collect();
                build_level(degree, base[i], &strong, gens)
            })
            .collect();

        let reached = |levels: &[Level]| {
            known_order.is_some_and(|target| {
                levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len())) == *target
            })
        };

        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            if reached(&levels) {
                break;
            }
            let li = i as usize;
            let mut extended_to: Option<usize> = None;
            'search: for oi in 0..levels[li].orbit.len() {
                let x = levels[li].orbit[oi];
                for gi in 0..levels[li].gens.len() {
                    let s = &strong[levels[li].gens[gi]];
                    let (ux, _) = levels[li].reps[x].as_ref().expect("orbit point");
                    let y = s.apply(x);
                    let (_, uy_inv) = levels[li].reps[y].as_ref().expect("orbit is closed");
                    let h = ux.then(s).then(uy_inv);
                    if h.is_identity() {
                        continue;
                    }
                    let (residue, j) = sift_from(&levels, h, li + 1);
                    if j == levels.len() && residue.is_identity() {
                        continue;
                    }
                    let new_index = strong.len();
                    if j == levels.len() {
                        let point = first_moved(&residue).expect("non-identity residue");
                        base.push(point);
                        levels.push(build_level(degree, point, &strong, Vec::new()));
                    }
                    strong.push(residue);
                    for l in (li + 1)..=j {
                        let mut gens = std::mem::take(&mut levels[l].gens);
                        gens.push(new_index);
                        levels[l] = build_level(degree, base[l], &strong, gens);
                    }
                    extended_to = Some(j);
                    break 'search;
                }
            }
            match extended_to {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
        let order = levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        if let Some(target) = known_order {
            if order != *target {
                return Err(Error::Invariant(format!(
                    "stabilizer chain has order {order}, expected {target}"
                )));
            }
        }
        let generators = if gens.is_empty() { Vec::new() } else { gens };
        Ok(PermGroup {
            degree,
            generators: generators.into_iter().filter(|g| !g.is_identity()).collect(),
            strong,
            levels,
            order,
        })
    }

    /// Builds the chain directly from a base and a strong generating set
    /// relative to it; the caller guarantees the strong generating property.
    pub(crate) fn from_bsgs(degree: usize, base: Vec<usize>, strong: Vec<VertexPermutation>) -> PermGroup {
        let levels: Vec<Level> = (0..base.len())
            .map(|i| {
                let gens = (0..strong.len())
                    .filter(|&s| base[..i].iter().all(|&b| strong[s].apply(b) == b))
                    .collect();
                build_level(degree, base[i], &strong, gens)
            })
            .collect();
        let order = levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        PermGroup {
            degree,
            generators: strong.clone(),
            strong,
            levels,
            order,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generating set the group was built from (identity elements removed).
    pub fn generators(&self) -> &[VertexPermutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[VertexPermutation] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Sizes of the basic orbits; their product is the order.
    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, p: &VertexPermutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, j) = sift_from(&self.levels, p.clone(), 0);
        j == self.levels.len() && residue.is_identity()
    }

    /// Orbits of the group on `0..n`, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for g in &self.strong {
            for v in 0..self.degree {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g.apply(v)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); self.degree];
        for v in 0..self.degree {
            let r = find(&mut parent, v);
            groups[r].push(v);
        }
        groups.into_iter().filter(|g| !g.is_empty()).collect()
    }

    /// The pointwise stabilizer of `points`, with a chain whose base starts at `points`.
    pub fn stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        if self.is_trivial() {
            return Ok(PermGroup::trivial(self.degree));
        }
        let rebased = PermGroup::with_base_prefix(self.degree, self.strong.clone(), points, Some(&self.order))?;
        let k = points.len().min(rebased.levels.len());
        let base: Vec<usize> = rebased.base();
        let strong: Vec<VertexPermutation> = rebased
            .strong
            .iter()
            .filter(|s| base[..k].iter().all(|&b| s.apply(b) == b))
            .cloned()
            .collect();
        let base = base[k..].to_vec();
        Ok(PermGroup::from_bsgs(self.degree, base, strong))
    }

    /// Every element of the group, in a deterministic order. Intended for small groups.
    pub fn elements(&self) -> Vec<VertexPermutation> {
        let mut out = vec![VertexPermutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for g in &out {
                for &x in &level.orbit {
                    let (u, _) = level.reps[x].as_ref().expect("orbit point");
                    next.push(g.then(u));
                }
            }
            out = next;
        }
        out
    }

    /// Checks that every generator sifts to the identity and that the order
    /// equals the product of the basic orbit sizes.
    pub fn verify_chain(&self) -> bool {
        let product = self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()));
        product == self.order && self.generators.iter().chain(&self.strong).all(|g| self.contains(g))
    }
}

/// Sifts `h` through `levels[start..]`; returns the residue and the level at
/// which sifting stopped (`levels.len()` when it went all the way through).
fn sift_from(levels: &[Level], mut h: VertexPermutation, start: usize) -> (VertexPermutation, usize) {
    for (l, level) in levels.iter().enumerate().skip(start) {
        let y = h.apply(level.base_point);
        match &level.reps[y] {
            Some((_, inv)) => h = h.then(inv),
            None => return (h, l),
        }
    }
    (h, levels.len())
}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PermGroup", 4)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("order", &self.order.to_string())?;
        st.serialize_field("base", &self.base())?;
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        st.serialize_field("generators", &gens)?;
        st.end()
    }
}
