//! Does some basket over a given index multiset make `l(m)` integral?
//!
//! Each slot of the multiset gets a `b` coprime to its index with
//! `2b <= r`. A point `(b, r)` contributes to `l(m)` a fraction with
//! denominator dividing `2r`, so with `D = lcm(2 r_i)` every contribution is
//! a residue mod `D` and the question becomes a subset-sum over residues:
//! is `0` reachable, picking one option per slot, simultaneously for every
//! `m` in `2..=depth`?
//!
//! Small instances are decided by walking the candidate b-multisets in
//! lexicographic order. Larger ones use a suffix reachability table and then
//! pick the smallest feasible `b` slot by slot; the greedy choice yields the
//! lexicographically smallest witness, which is automatically non-decreasing
//! within each index because sorting a feasible sequence keeps it feasible.

use std::collections::HashSet;

use crate::rational::{checked_lcm, frac_part, int, Rational};
use crate::reid_rr::{correction_numerator, point_correction, Basket, BasketPoint, IndexMultiset};

/// Below this many candidate b-multisets the direct walk is used.
const DIRECT_SEARCH_LIMIT: u128 = 256;

/// Searches for a basket projecting onto `indices` with `l(m)` integral for
/// every `2 <= m <= depth`. Returns the lexicographically smallest such
/// basket (ordering b-values slot by slot in canonical index order).
pub fn exists_integral_basket(indices: &IndexMultiset, depth: u32) -> Option<Basket> {
    assert!(depth >= 2, "integrality depth must be at least 2");
    if indices.is_empty() {
        return Some(Basket::empty());
    }
    let levels = (depth - 1) as usize;
    let modulus = indices
        .entries()
        .iter()
        .try_fold(1u64, |acc, &(r, _)| checked_lcm(acc, 2 * u64::from(r)));
    let encodable = modulus.and_then(|d| {
        u128::from(d)
            .checked_pow(levels as u32)
            .map(|_| d)
    });
    match encodable {
        Some(d) => {
            let groups = residue_groups(indices, depth, d);
            if combinations(&groups) <= DIRECT_SEARCH_LIMIT {
                direct_search(&groups, d)
            } else {
                table_search(&groups, d)
            }
        }
        None => rational_search(indices, depth),
    }
}

struct Group {
    r: u32,
    count: u32,
    bs: Vec<u32>,
    /// `contrib[i][level]`: residue mod D of point `(bs[i], r)` in `l(level + 2)`.
    contrib: Vec<Vec<u64>>,
}

fn residue_groups(indices: &IndexMultiset, depth: u32, modulus: u64) -> Vec<Group> {
    indices
        .entries()
        .iter()
        .map(|&(r, count)| {
            let two_r = 2 * u64::from(r);
            let scale = modulus / two_r;
            let bs: Vec<u32> = BasketPoint::admissible_b(r).collect();
            let contrib = bs
                .iter()
                .map(|&b| {
                    (2..=u64::from(depth))
                        .map(|m| {
                            let numer = (correction_numerator(b, r, m) % u128::from(two_r)) as u64;
                            numer * scale
                        })
                        .collect()
                })
                .collect();
            Group {
                r,
                count,
                bs,
                contrib,
            }
        })
        .collect()
}

fn combinations(groups: &[Group]) -> u128 {
    groups.iter().fold(1u128, |acc, g| {
        // multichoose(n, k) = C(n + k - 1, k)
        let n = g.bs.len() as u128;
        let k = u128::from(g.count);
        let mut c = 1u128;
        for i in 0..k {
            c = c.saturating_mul(n + i) / (i + 1);
        }
        acc.saturating_mul(c)
    })
}

fn add_into(state: &mut [u64], delta: &[u64], modulus: u64) {
    for (s, d) in state.iter_mut().zip(delta) {
        *s = (*s + d) % modulus;
    }
}

fn build_basket(groups: &[Group], choice: &[Vec<usize>]) -> Basket {
    Basket::from_points(groups.iter().zip(choice).flat_map(|(g, picks)| {
        picks
            .iter()
            .map(move |&i| BasketPoint::new(g.bs[i], g.r).expect("admissible b"))
    }))
}

fn direct_search(groups: &[Group], modulus: u64) -> Option<Basket> {
    fn walk(
        groups: &[Group],
        modulus: u64,
        g: usize,
        state: &mut Vec<u64>,
        choice: &mut Vec<Vec<usize>>,
    ) -> bool {
        if g == groups.len() {
            return state.iter().all(|&s| s == 0);
        }
        let group = &groups[g];
        if choice[g].len() == group.count as usize {
            return walk(groups, modulus, g + 1, state, choice);
        }
        let lo = choice[g].last().copied().unwrap_or(0);
        for i in lo..group.bs.len() {
            let saved = state.clone();
            add_into(state, &group.contrib[i], modulus);
            choice[g].push(i);
            if walk(groups, modulus, g, state, choice) {
                return true;
            }
            choice[g].pop();
            *state = saved;
        }
        false
    }

    let levels = groups[0].contrib[0].len();
    let mut state = vec![0u64; levels];
    let mut choice = vec![Vec::new(); groups.len()];
    walk(groups, modulus, 0, &mut state, &mut choice).then(|| build_basket(groups, &choice))
}

fn encode(state: &[u64], modulus: u64) -> u128 {
    state
        .iter()
        .rev()
        .fold(0u128, |acc, &s| acc * u128::from(modulus) + u128::from(s))
}

fn decode(mut code: u128, levels: usize, modulus: u64) -> Vec<u64> {
    let m = u128::from(modulus);
    (0..levels)
        .map(|_| {
            let s = (code % m) as u64;
            code /= m;
            s
        })
        .collect()
}

fn table_search(groups: &[Group], modulus: u64) -> Option<Basket> {
    let levels = groups[0].contrib[0].len();
    // One entry per slot, in canonical order.
    let slots: Vec<usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, group)| std::iter::repeat(g).take(group.count as usize))
        .collect();

    // reach[i]: sums achievable by slots i.. (as encoded residue vectors).
    let mut reach: Vec<HashSet<u128>> = vec![HashSet::new(); slots.len() + 1];
    reach[slots.len()].insert(0);
    for i in (0..slots.len()).rev() {
        let group = &groups[slots[i]];
        let mut next = HashSet::with_capacity(reach[i + 1].len() * group.bs.len());
        for &code in &reach[i + 1] {
            let base = decode(code, levels, modulus);
            for delta in &group.contrib {
                let mut s = base.clone();
                add_into(&mut s, delta, modulus);
                next.insert(encode(&s, modulus));
            }
        }
        reach[i] = next;
    }
    if !reach[0].contains(&0) {
        return None;
    }

    let mut prefix = vec![0u64; levels];
    let mut choice = vec![Vec::new(); groups.len()];
    for (i, &g) in slots.iter().enumerate() {
        let group = &groups[g];
        let pick = (0..group.bs.len())
            .find(|&opt| {
                let mut s = prefix.clone();
                add_into(&mut s, &group.contrib[opt], modulus);
                let need: Vec<u64> = s.iter().map(|&x| (modulus - x) % modulus).collect();
                reach[i + 1].contains(&encode(&need, modulus))
            })
            .expect("a feasible option exists at every step once 0 is reachable");
        add_into(&mut prefix, &group.contrib[pick], modulus);
        choice[g].push(pick);
    }
    Some(build_basket(groups, &choice))
}

/// Exact-rational walk used only when `lcm(2 r_i)^(depth-1)` does not fit in
/// 128 bits.
fn rational_search(indices: &IndexMultiset, depth: u32) -> Option<Basket> {
    let slots: Vec<u32> = indices.iter().collect();
    let levels: Vec<u64> = (2..=u64::from(depth)).collect();

    fn walk(
        slots: &[u32],
        levels: &[u64],
        i: usize,
        acc: &mut Vec<Rational>,
        picked: &mut Vec<BasketPoint>,
    ) -> bool {
        if i == slots.len() {
            return acc.iter().all(|x| frac_part(x) == int(0));
        }
        let r = slots[i];
        let lo = match picked.last() {
            Some(p) if p.r() == r => p.b(),
            _ => 1,
        };
        for b in BasketPoint::admissible_b(r).filter(|&b| b >= lo) {
            let p = BasketPoint::new(b, r).expect("admissible b");
            let saved = acc.clone();
            for (a, &m) in acc.iter_mut().zip(levels) {
                *a = frac_part(&(a.clone() + point_correction(p, m)));
            }
            picked.push(p);
            if walk(slots, levels, i + 1, acc, picked) {
                return true;
            }
            picked.pop();
            *acc = saved;
        }
        false
    }

    let mut acc = vec![int(0); levels.len()];
    let mut picked = Vec::new();
    walk(&slots, &levels, 0, &mut acc, &mut picked).then(|| Basket::from_points(picked))
}
