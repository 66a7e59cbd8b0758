//! Finite `(Q, P)`-bisets as explicit action tables.
//!
//! Points are `0..size`. The left action is stored row-major by group
//! element (`left[q * size + x] = q·x`), the right action row-major by point
//! (`right[x * |P| + p] = x·p`).

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{quotient, section, Group, GroupMap, Section, Subgroup};

#[derive(Clone, PartialEq, Eq)]
pub struct Biset {
    left: Arc<Group>,
    right: Arc<Group>,
    size: usize,
    left_action: Vec<usize>,
    right_action: Vec<usize>,
}

impl fmt::Debug for Biset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Biset")
            .field("left_order", &self.left.order())
            .field("right_order", &self.right.order())
            .field("size", &self.size)
            .finish()
    }
}

impl Biset {
    /// Validates both action laws and that the actions commute.
    pub fn new(
        left: Arc<Group>,
        right: Arc<Group>,
        size: usize,
        left_action: Vec<usize>,
        right_action: Vec<usize>,
    ) -> Result<Self> {
        let (nq, np) = (left.order(), right.order());
        if left_action.len() != nq * size || right_action.len() != size * np {
            return Err(Error::InvalidBiset("action tables have the wrong shape".into()));
        }
        if left_action.iter().chain(&right_action).any(|&y| y >= size) {
            return Err(Error::InvalidBiset("action maps outside the point set".into()));
        }
        let u = Biset::from_parts(left, right, size, left_action, right_action);
        for x in 0..size {
            if u.act_left(0, x) != x || u.act_right(x, 0) != x {
                return Err(Error::InvalidBiset(format!("identity moves point {x}")));
            }
        }
        for x in 0..size {
            for a in 0..nq {
                let ax = u.act_left(a, x);
                for b in 0..nq {
                    if u.act_left(b, ax) != u.act_left(u.left.mul(b, a), x) {
                        return Err(Error::InvalidBiset("left action law fails".into()));
                    }
                }
                for p in 0..np {
                    if u.act_right(ax, p) != u.act_left(a, u.act_right(x, p)) {
                        return Err(Error::InvalidBiset("actions do not commute".into()));
                    }
                }
            }
            for a in 0..np {
                let xa = u.act_right(x, a);
                for b in 0..np {
                    if u.act_right(xa, b) != u.act_right(x, u.right.mul(a, b)) {
                        return Err(Error::InvalidBiset("right action law fails".into()));
                    }
                }
            }
        }
        Ok(u)
    }

    fn from_parts(
        left: Arc<Group>,
        right: Arc<Group>,
        size: usize,
        left_action: Vec<usize>,
        right_action: Vec<usize>,
    ) -> Self {
        Biset { left, right, size, left_action, right_action }
    }

    /// Builds a biset from action closures without validation.
    fn from_fns(
        left: Arc<Group>,
        right: Arc<Group>,
        size: usize,
        act_left: impl Fn(usize, usize) -> usize,
        act_right: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let left_action = (0..left.order() * size).map(|k| act_left(k / size, k % size)).collect();
        let np = right.order();
        let right_action = (0..size * np).map(|k| act_right(k / np, k % np)).collect();
        Biset::from_parts(left, right, size, left_action, right_action)
    }

    /// `(Q × P)/B` with `q'·(q, p)B·p' = (q'q, p'⁻¹p)B`. Elements of `Q × P`
    /// are indexed as in [`Group::direct_product`].
    pub fn from_subgroup_pair(q: Arc<Group>, p: Arc<Group>, b: &Subgroup) -> Result<Self> {
        let np = p.order();
        let product = Group::direct_product(&q, &p);
        if b.members().len() != product.order() {
            return Err(Error::NotSubgroup("subgroup does not live in Q × P".into()));
        }
        let pair = |a: usize, c: usize| a * np + c;
        let mut class = vec![usize::MAX; product.order()];
        let mut reps = Vec::new();
        for a in 0..product.order() {
            if class[a] == usize::MAX {
                for &s in b.elements() {
                    class[product.mul(a, s)] = reps.len();
                }
                reps.push(a);
            }
        }
        let size = reps.len();
        Ok(Biset::from_fns(
            q.clone(),
            p.clone(),
            size,
            |a, x| class[pair(q.mul(a, reps[x] / np), reps[x] % np)],
            |x, c| class[pair(reps[x] / np, p.mul(p.inv(c), reps[x] % np))],
        ))
    }

    /// `P` as a `(P, P)`-biset.
    pub fn identity(p: Arc<Group>) -> Self {
        Biset::from_fns(p.clone(), p.clone(), p.order(), |a, x| p.mul(a, x), |x, b| p.mul(x, b))
    }

    /// `Res^P_H`: `P` as an `(H, P)`-biset. `H` is the group returned by
    /// [`Subgroup::to_group`].
    pub fn restriction(p: &Arc<Group>, h: &Subgroup) -> Self {
        let hg = Arc::new(h.to_group(p));
        let el = h.elements().to_vec();
        let g = p.clone();
        Biset::from_fns(hg, p.clone(), p.order(), |a, x| g.mul(el[a], x), |x, b| g.mul(x, b))
    }

    /// `Ind_H^P`: `P` as a `(P, H)`-biset.
    pub fn induction(p: &Arc<Group>, h: &Subgroup) -> Self {
        let hg = Arc::new(h.to_group(p));
        let el = h.elements().to_vec();
        let g = p.clone();
        Biset::from_fns(p.clone(), hg, p.order(), |a, x| g.mul(a, x), |x, b| g.mul(x, el[b]))
    }

    /// `Inf_{P/N}^P`: `P/N` as a `(P, P/N)`-biset.
    pub fn inflation(p: &Arc<Group>, n: &Subgroup) -> Result<Self> {
        let q = quotient(p, n)?;
        let (bar, pi) = (q.group.clone(), q.projection);
        Ok(Biset::from_fns(p.clone(), bar.clone(), bar.order(), |a, x| bar.mul(pi.apply(a), x), |x, b| bar.mul(x, b)))
    }

    /// `Def^P_{P/N}`: `P/N` as a `(P/N, P)`-biset.
    pub fn deflation(p: &Arc<Group>, n: &Subgroup) -> Result<Self> {
        let q = quotient(p, n)?;
        let (bar, pi) = (q.group.clone(), q.projection);
        Ok(Biset::from_fns(bar.clone(), p.clone(), bar.order(), |a, x| bar.mul(a, x), |x, b| bar.mul(x, pi.apply(b))))
    }

    /// `Iso(f)` for an isomorphism `f: G → H`: `H` as an `(H, G)`-biset.
    pub fn iso(f: &GroupMap) -> Result<Self> {
        if !f.is_isomorphism() {
            return Err(Error::NotIsomorphism("map is not bijective".into()));
        }
        let h = f.target().clone();
        Ok(Biset::from_fns(h.clone(), f.source().clone(), h.order(), |a, x| h.mul(a, x), |x, b| h.mul(x, f.apply(b))))
    }

    /// `Indinf_{H/N}^P`: `P/N` as a `(P, H/N)`-biset, for `N ⊴ H ≤ P`.
    /// Returns the biset together with the section `H/N` it uses.
    pub fn indinf(p: &Arc<Group>, h: &Subgroup, n: &Subgroup) -> Result<(Self, Section)> {
        let sec = section(p, h, n)?;
        let mut class = vec![usize::MAX; p.order()];
        let mut reps = Vec::new();
        for a in 0..p.order() {
            if class[a] == usize::MAX {
                for &s in n.elements() {
                    class[p.mul(a, s)] = reps.len();
                }
                reps.push(a);
            }
        }
        let u = Biset::from_fns(
            p.clone(),
            sec.group().clone(),
            reps.len(),
            |a, x| class[p.mul(a, reps[x])],
            |x, c| class[p.mul(reps[x], sec.rep(c))],
        );
        Ok((u, sec))
    }

    /// `U ⊔ V`, with the points of `V` numbered after those of `U`.
    pub fn disjoint_union(&self, other: &Biset) -> Result<Self> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::GroupMismatch("disjoint union of bisets over different groups".into()));
        }
        let n = self.size;
        Ok(Biset::from_fns(
            self.left.clone(),
            self.right.clone(),
            n + other.size,
            |a, x| if x < n { self.act_left(a, x) } else { n + other.act_left(a, x - n) },
            |x, b| if x < n { self.act_right(x, b) } else { n + other.act_right(x - n, b) },
        ))
    }

    /// The same biset with point `x` renamed to `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Biset> {
        let mut inverse = vec![usize::MAX; self.size];
        for (x, &y) in perm.iter().enumerate() {
            if y >= self.size || inverse[y] != usize::MAX {
                return Err(Error::InvalidBiset("point relabeling is not a bijection".into()));
            }
            inverse[y] = x;
        }
        if perm.len() != self.size {
            return Err(Error::InvalidBiset("point relabeling has the wrong length".into()));
        }
        Ok(Biset::from_fns(
            self.left.clone(),
            self.right.clone(),
            self.size,
            |q, y| perm[self.act_left(q, inverse[y])],
            |y, p| perm[self.act_right(inverse[y], p)],
        ))
    }

    /// `V ×_H U` for a `(K, H)`-biset `self` and an `(H, G)`-biset `u`.
    pub fn compose(&self, u: &Biset) -> Result<Biset> {
        if *self.right != *u.left {
            return Err(Error::GroupMismatch(format!(
                "cannot compose: middle groups of orders {} and {} differ",
                self.right.order(),
                u.left.order()
            )));
        }
        let (nv, nu) = (self.size, u.size);
        let mut uf = UnionFind::new(nv * nu);
        for h in self.right.generators() {
            for v in 0..nv {
                let vh = self.act_right(v, h);
                for x in 0..nu {
                    uf.union(vh * nu + x, v * nu + u.act_left(h, x));
                }
            }
        }
        let mut class = vec![usize::MAX; nv * nu];
        let mut reps = Vec::new();
        for k in 0..nv * nu {
            let r = uf.find(k);
            if class[r] == usize::MAX {
                class[r] = reps.len();
                reps.push(k);
            }
            class[k] = class[r];
        }
        Ok(Biset::from_fns(
            self.left.clone(),
            u.right.clone(),
            reps.len(),
            |a, x| class[self.act_left(a, reps[x] / nu) * nu + reps[x] % nu],
            |x, b| class[(reps[x] / nu) * nu + u.act_right(reps[x] % nu, b)],
        ))
    }

    pub fn left(&self) -> &Arc<Group> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Group> {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn left_action(&self) -> &[usize] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[usize] {
        &self.right_action
    }

    #[inline]
    pub fn act_left(&self, q: usize, x: usize) -> usize {
        self.left_action[q * self.size + x]
    }

    #[inline]
    pub fn act_right(&self, x: usize, p: usize) -> usize {
        self.right_action[x * self.right.order() + p]
    }

    pub fn left_stabilizer(&self, x: usize) -> Subgroup {
        let elems = (0..self.left.order()).filter(|&q| self.act_left(q, x) == x).collect();
        Subgroup::from_sorted_unchecked(self.left.order(), elems)
    }

    pub fn right_stabilizer(&self, x: usize) -> Subgroup {
        let elems = (0..self.right.order()).filter(|&p| self.act_right(x, p) == x).collect();
        Subgroup::from_sorted_unchecked(self.right.order(), elems)
    }

    pub fn is_left_free(&self) -> bool {
        (0..self.size).all(|x| (1..self.left.order()).all(|q| self.act_left(q, x) != x))
    }

    pub fn is_right_free(&self) -> bool {
        (0..self.size).all(|x| (1..self.right.order()).all(|p| self.act_right(x, p) != x))
    }

    /// Orbits of `A × B` acting by `(a, b)·x = a·x·b`: the smallest point of
    /// each orbit (ascending) and the orbit index of every point.
    pub fn orbits(&self, a: &Subgroup, b: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let ga = a.generators(&self.left);
        let gb = b.generators(&self.right);
        let mut orbit = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        let mut stack = Vec::new();
        for x in 0..self.size {
            if orbit[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            orbit[x] = id;
            stack.push(x);
            while let Some(y) = stack.pop() {
                let next = ga.iter().map(|&g| self.act_left(g, y)).chain(gb.iter().map(|&g| self.act_right(y, g)));
                for z in next.collect::<Vec<_>>() {
                    if orbit[z] == usize::MAX {
                        orbit[z] = id;
                        stack.push(z);
                    }
                }
            }
        }
        (reps, orbit)
    }

    /// Smallest point of each `(A, B)`-orbit, ascending.
    pub fn double_cosets(&self, a: &Subgroup, b: &Subgroup) -> Vec<usize> {
        self.orbits(a, b).0
    }

    /// `ᵘS = {x ∈ Q : x·u = u·s for some s ∈ S}`.
    pub fn transport_left(&self, u: usize, s: &Subgroup) -> Result<Subgroup> {
        let mut targets = FixedBitSet::with_capacity(self.size);
        for &e in s.elements() {
            targets.insert(self.act_right(u, e));
        }
        let elems: Vec<usize> = (0..self.left.order()).filter(|&x| targets.contains(self.act_left(x, u))).collect();
        Subgroup::new(&self.left, elems)
    }

    /// `Tᵘ = {x ∈ P : t·u = u·x for some t ∈ T}`.
    pub fn transport_right(&self, u: usize, t: &Subgroup) -> Result<Subgroup> {
        let mut targets = FixedBitSet::with_capacity(self.size);
        for &e in t.elements() {
            targets.insert(self.act_left(e, u));
        }
        let elems: Vec<usize> = (0..self.right.order()).filter(|&x| targets.contains(self.act_right(u, x))).collect();
        Subgroup::new(&self.right, elems)
    }

    /// `T\ω/S` as an `(N_Q(T)/T, N_P(S)/S)`-biset, where `ω` is the
    /// `(N_Q(T), N_P(S))`-orbit of `u` and the sections are given as `left`
    /// and `right`.
    pub fn quotient_biset(&self, left: &Section, right: &Section, u: usize) -> Result<Biset> {
        if left.group().order() * left.lower().len() != left.upper().len()
            || left.upper().members().len() != self.left.order()
            || right.upper().members().len() != self.right.order()
        {
            return Err(Error::GroupMismatch("sections do not belong to the biset's groups".into()));
        }
        let (_, orbit) = self.orbits(left.upper(), right.upper());
        let omega: Vec<usize> = (0..self.size).filter(|&x| orbit[x] == orbit[u]).collect();
        let (tg, sg) = (left.lower().generators(&self.left), right.lower().generators(&self.right));
        let mut class = vec![usize::MAX; self.size];
        let mut reps = Vec::new();
        let mut stack = Vec::new();
        for &x in &omega {
            if class[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            class[x] = id;
            stack.push(x);
            while let Some(y) = stack.pop() {
                let next: Vec<usize> =
                    tg.iter().map(|&t| self.act_left(t, y)).chain(sg.iter().map(|&s| self.act_right(y, s))).collect();
                for z in next {
                    if class[z] == usize::MAX {
                        class[z] = id;
                        stack.push(z);
                    }
                }
            }
        }
        Ok(Biset::from_fns(
            left.group().clone(),
            right.group().clone(),
            reps.len(),
            |c, x| class[self.act_left(left.rep(c), reps[x])],
            |x, c| class[self.act_right(reps[x], right.rep(c))],
        ))
    }

    /// Orbits of `Q × P`, as in [`Biset::orbits`] for the whole groups.
    pub fn transitive_components(&self) -> (Vec<usize>, Vec<usize>) {
        self.orbits(&self.left.whole(), &self.right.whole())
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.transitive_components().0.len() == 1
    }

    /// A biset isomorphism `self → other` as a point map, if one exists.
    ///
    /// An equivariant map out of a transitive component is determined by the
    /// image of one point, and isomorphism of transitive bisets is an
    /// equivalence relation, so components can be matched greedily.
    pub fn isomorphism(&self, other: &Biset) -> Option<Vec<usize>> {
        if *self.left != *other.left || *self.right != *other.right || self.size != other.size {
            return None;
        }
        let (reps, orbit) = self.transitive_components();
        let (oreps, oorbit) = other.transitive_components();
        let orbit_size = |orb: &[usize], k: usize| orb.iter().filter(|&&o| o == k).count();
        let mut used = vec![false; oreps.len()];
        let mut map = vec![usize::MAX; self.size];
        for (k, &x) in reps.iter().enumerate() {
            let n = orbit_size(&orbit, k);
            let found = (0..oreps.len()).filter(|&j| !used[j] && orbit_size(&oorbit, j) == n).find_map(|j| {
                (0..other.size).filter(|&y| oorbit[y] == j).find_map(|y| self.extend(other, x, y).map(|m| (j, m)))
            });
            let (j, partial) = found?;
            used[j] = true;
            for (a, b) in partial {
                map[a] = b;
            }
        }
        Some(map)
    }

    /// The equivariant map on the component of `x` with `x ↦ y`, if it is
    /// well defined and injective.
    fn extend(&self, other: &Biset, x: usize, y: usize) -> Option<Vec<(usize, usize)>> {
        let (gq, gp) = (self.left.generators(), self.right.generators());
        let mut image = vec![usize::MAX; self.size];
        let mut hit = FixedBitSet::with_capacity(other.size);
        image[x] = y;
        hit.insert(y);
        let mut stack = vec![x];
        let mut pairs = vec![(x, y)];
        while let Some(a) = stack.pop() {
            let b = image[a];
            let moves = gq
                .iter()
                .map(|&q| (self.act_left(q, a), other.act_left(q, b)))
                .chain(gp.iter().map(|&p| (self.act_right(a, p), other.act_right(b, p))));
            for (na, nb) in moves.collect::<Vec<_>>() {
                if image[na] == usize::MAX {
                    if hit.contains(nb) {
                        return None;
                    }
                    image[na] = nb;
                    hit.insert(nb);
                    pairs.push((na, nb));
                    stack.push(na);
                } else if image[na] != nb {
                    return None;
                }
            }
        }
        Some(pairs)
    }

    pub fn is_isomorphic(&self, other: &Biset) -> bool {
        self.isomorphism(other).is_some()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
