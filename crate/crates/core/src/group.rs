//! Finite groups given by explicit multiplication tables.
//!
//! Groups show up in two roles: as isotropy groups carved out of a groupoid,
//! and as abstract coefficients for products and action groupoids.

use crate::error::{GroupoidError, Result};
use crate::report::{CheckOutcome, Report};

/// A finite group with a dense multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    /// `table[a * order + b]` is the product `a * b`.
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, deriving identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(GroupoidError::MalformedTable("empty group table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for row in &table {
            if row.len() != order {
                return Err(GroupoidError::MalformedTable(
                    "group table is not square".into(),
                ));
            }
            for &v in row {
                if v >= order {
                    return Err(GroupoidError::MalformedTable(format!(
                        "entry {v} out of range for order {order}"
                    )));
                }
                flat.push(v);
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| flat[e * order + a] == a && flat[a * order + e] == a))
            .ok_or_else(|| GroupoidError::MalformedTable("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| flat[a * order + b] == identity && flat[b * order + a] == identity)
                .ok_or_else(|| {
                    GroupoidError::MalformedTable(format!("element {a} has no inverse"))
                })?;
            inverse[a] = inv;
        }
        let labels = (0..order).map(|i| format!("g{i}")).collect();
        let group = FiniteGroup {
            order,
            table: flat,
            identity,
            inverse,
            labels,
        };
        let report = group.verify();
        if !report.all_pass() {
            let fail = report.first_failure().unwrap();
            return Err(GroupoidError::ValidationFailed(format!(
                "{}: {:?}",
                fail.law, fail.outcome
            )));
        }
        Ok(group)
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            identity: 0,
            inverse: vec![0],
            labels: vec!["e".into()],
        }
    }

    /// The cyclic group Z_n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs order >= 1");
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b) % n;
            }
        }
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        let labels = (0..n)
            .map(|i| {
                if i == 0 {
                    "e".to_string()
                } else if i == 1 {
                    "r".to_string()
                } else {
                    format!("r{i}")
                }
            })
            .collect();
        FiniteGroup {
            order: n,
            table,
            identity: 0,
            inverse,
            labels,
        }
    }

    /// The Klein four-group Z_2 x Z_2.
    pub fn klein() -> Self {
        let mut table = vec![0; 16];
        for a in 0..4 {
            for b in 0..4 {
                table[a * 4 + b] = a ^ b;
            }
        }
        FiniteGroup {
            order: 4,
            table,
            identity: 0,
            inverse: vec![0, 1, 2, 3],
            labels: vec!["e".into(), "a".into(), "b".into(), "ab".into()],
        }
    }

    /// The symmetric group on `n` letters, elements ordered lexicographically.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index: std::collections::HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let order = perms.len();
        let mut table = vec![0; order * order];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // (pa * pb)(x) = pa(pb(x))
                let prod: Vec<usize> = (0..n).map(|x| pa[pb[x]]).collect();
                table[a * order + b] = index[&prod];
            }
        }
        let identity = index[&(0..n).collect::<Vec<_>>()];
        let mut inverse = vec![0; order];
        for (a, pa) in perms.iter().enumerate() {
            let mut inv = vec![0; n];
            for (x, &y) in pa.iter().enumerate() {
                inv[y] = x;
            }
            inverse[a] = index[&inv];
        }
        let labels = perms
            .iter()
            .map(|p| {
                let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("({})", s.join(" "))
            })
            .collect();
        FiniteGroup {
            order,
            table,
            identity,
            inverse,
            labels,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.order);
        self.labels = labels;
    }

    /// Exhaustive check of the group axioms.
    pub fn verify(&self) -> Report {
        let mut report = Report::new(format!("group of order {}", self.order));
        let n = self.order;

        let mut assoc = CheckOutcome::Pass;
        'assoc: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        assoc = CheckOutcome::fail(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                        break 'assoc;
                    }
                }
            }
        }
        report.push("associativity", assoc);

        let e = self.identity;
        let id_ok = (0..n).all(|a| self.mul(e, a) == a && self.mul(a, e) == a);
        report.push(
            "identity",
            if id_ok {
                CheckOutcome::Pass
            } else {
                CheckOutcome::fail(format!("element {e} is not a two-sided identity"))
            },
        );

        let inv_bad = (0..n)
            .find(|&a| self.mul(a, self.inverse[a]) != e || self.mul(self.inverse[a], a) != e);
        report.push(
            "inverses",
            match inv_bad {
                None => CheckOutcome::Pass,
                Some(a) => CheckOutcome::fail(format!("inverse law fails for element {a}")),
            },
        );
        report
    }

    /// The subgroup generated by closing `elements` under multiplication,
    /// together with the embedding of the subgroup into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut members: Vec<usize> = vec![self.identity];
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        for &x in elements {
            if !seen[x] {
                seen[x] = true;
                members.push(x);
            }
        }
        loop {
            let mut added = false;
            let snapshot = members.clone();
            for &a in &snapshot {
                for &b in &snapshot {
                    let p = self.mul(a, b);
                    if !seen[p] {
                        seen[p] = true;
                        members.push(p);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        members.sort_unstable();
        let index: std::collections::HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let k = members.len();
        let mut table = vec![0; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * k + j] = index[&self.mul(a, b)];
            }
        }
        let inverse = members.iter().map(|&a| index[&self.inverse[a]]).collect();
        let labels = members.iter().map(|&a| self.labels[a].clone()).collect();
        (
            FiniteGroup {
                order: k,
                table,
                identity: index[&self.identity],
                inverse,
                labels,
            },
            members,
        )
    }

    /// Brute-force search for a group isomorphism `self -> other`.
    ///
    /// Returns the first witness in lexicographic order of element images.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        let n = self.order;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.identity] = other.identity;
        used[other.identity] = true;
        // Element orders must match, a cheap and effective prune.
        let ord_self: Vec<usize> = (0..n).map(|a| element_order(self, a)).collect();
        let ord_other: Vec<usize> = (0..n).map(|a| element_order(other, a)).collect();
        fn extend(
            g: &FiniteGroup,
            h: &FiniteGroup,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            ord_g: &[usize],
            ord_h: &[usize],
        ) -> bool {
            let a = match (0..g.order).find(|&a| map[a] == usize::MAX) {
                None => return true,
                Some(a) => a,
            };
            for b in 0..h.order {
                if used[b] || ord_g[a] != ord_h[b] {
                    continue;
                }
                map[a] = b;
                used[b] = true;
                let consistent = (0..g.order).all(|x| {
                    if map[x] == usize::MAX {
                        return true;
                    }
                    let ax = map[g.mul(a, x)];
                    let xa = map[g.mul(x, a)];
                    (ax == usize::MAX || ax == h.mul(b, map[x]))
                        && (xa == usize::MAX || xa == h.mul(map[x], b))
                });
                if consistent && extend(g, h, map, used, ord_g, ord_h) {
                    return true;
                }
                map[a] = usize::MAX;
                used[b] = false;
            }
            false
        }
        if extend(self, other, &mut map, &mut used, &ord_self, &ord_other) {
            // Final full verification.
            let ok =
                (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b])));
            if ok {
                return Some(map);
            }
        }
        None
    }

    pub fn is_isomorphic_to(&self, other: &FiniteGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

fn element_order(g: &FiniteGroup, a: usize) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != g.identity() {
        x = g.mul(x, a);
        k += 1;
    }
    k
}

/// All permutations of `0..n`, lexicographically ordered.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}
