//! Finite posets, Hasse diagrams and order isomorphism.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A finite poset on named points. The order is stored as its reflexive,
/// transitive closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds the order generated by `relations` (pairs `a ≤ b` of indices).
    /// Fails on out-of-range indices, duplicate names or cycles.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidPoset("duplicate point names".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!(
                    "relation {a}<{b} out of range"
                )));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "relations force {} = {}",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    pub fn point() -> Self {
        Self::new(vec!["x".into()], &[]).unwrap()
    }

    /// `p1 < p2 < … < pn`.
    pub fn chain(n: usize) -> Self {
        let names = (1..=n).map(|i| format!("p{i}")).collect();
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(names, &rel).unwrap()
    }

    pub fn antichain(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("p{i}")).collect(), &[]).unwrap()
    }

    /// `bot < l, r < top`.
    pub fn diamond() -> Self {
        let names = ["bot", "l", "r", "top"].map(String::from).to_vec();
        Self::new(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// `point`, `chainN`, `antichainN` or `diamond`.
    pub fn builtin(name: &str) -> Result<Self> {
        let num = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| Error::InvalidPoset(format!("unknown built-in poset '{name}'")))
        };
        if name == "point" {
            Ok(Self::point())
        } else if name == "diamond" {
            Ok(Self::diamond())
        } else if let Some(rest) = name.strip_prefix("antichain") {
            Ok(Self::antichain(num(rest)?))
        } else if let Some(rest) = name.strip_prefix("chain") {
            Ok(Self::chain(num(rest)?))
        } else {
            Err(Error::InvalidPoset(format!(
                "unknown built-in poset '{name}'"
            )))
        }
    }

    /// Parses one declaration per line: `point NAME` or `a<b`. Blank lines and
    /// lines starting with `#` are skipped. Points mentioned only in relations
    /// are created on first use.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut rel = Vec::new();
        let mut intern = |s: &str, names: &mut Vec<String>| -> Result<usize> {
            let s = s.trim();
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidPoset(format!("bad point name '{s}'")));
            }
            Ok(*index.entry(s.to_string()).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            }))
        };
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix("point ") {
                intern(name, &mut names)?;
            } else if let Some((a, b)) = line.split_once('<') {
                let a = intern(a, &mut names)?;
                let b = intern(b, &mut names)?;
                rel.push((a, b));
            } else {
                return Err(Error::InvalidPoset(format!(
                    "line {}: expected 'point NAME' or 'a<b'",
                    lineno + 1
                )));
            }
        }
        Self::new(names, &rel)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// All pairs `a < b` with `a ≠ b`.
    pub fn strict_relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq[a][b])
            .collect()
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        transitive_reduction(self.len(), |a, b| self.leq[a][b])
    }

    /// The opposite order.
    pub fn dual(&self) -> Self {
        let rel: Vec<_> = self
            .strict_relations()
            .into_iter()
            .map(|(a, b)| (b, a))
            .collect();
        Self::new(self.names.clone(), &rel).unwrap()
    }

    /// A linear extension: every point comes after all points below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (0..self.len()).filter(|&j| self.leq[j][i]).count());
        order
    }
}

impl fmt::Display for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for name in &self.names {
            writeln!(f, "point {name}")?;
        }
        for (a, b) in self.covers() {
            writeln!(f, "{}<{}", self.names[a], self.names[b])?;
        }
        Ok(())
    }
}

/// Cover pairs `(a, b)` of the partial order `leq` on `0..n`: `a < b` with
/// nothing strictly between.
pub fn transitive_reduction(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |a: usize, b: usize| a != b && leq(a, b);
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if lt(a, b) && !(0..n).any(|m| lt(a, m) && lt(m, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

/// A finite poset given by its cover relation, as drawn in a Hasse diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hasse {
    pub labels: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl Hasse {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Reflexive-transitive closure of the covers.
    pub fn order(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            up[a].push(b);
        }
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                while let Some(v) = stack.pop() {
                    if !std::mem::replace(&mut seen[v], true) {
                        stack.extend(&up[v]);
                    }
                }
                seen
            })
            .collect()
    }
}

/// Whether two Hasse diagrams describe isomorphic posets. Backtracking over
/// candidate images, pruned by per-node invariants and cover adjacency.
pub fn order_isomorphic(a: &Hasse, b: &Hasse) -> bool {
    let n = a.len();
    if n != b.len() || a.covers.len() != b.covers.len() {
        return false;
    }
    let (oa, ob) = (a.order(), b.order());
    let inv = |h: &Hasse, o: &[Vec<bool>]| -> Vec<[usize; 5]> {
        let n = h.len();
        let mut height = vec![0usize; n];
        // longest chain from a minimal element, by relaxation in closure order
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (0..n).filter(|&u| o[u][v]).count());
        for &v in &order {
            for &(x, y) in &h.covers {
                if y == v {
                    height[v] = height[v].max(height[x] + 1);
                }
            }
        }
        (0..n)
            .map(|v| {
                [
                    height[v],
                    h.covers.iter().filter(|c| c.0 == v).count(),
                    h.covers.iter().filter(|c| c.1 == v).count(),
                    (0..n).filter(|&u| o[u][v]).count(),
                    (0..n).filter(|&u| o[v][u]).count(),
                ]
            })
            .collect()
    };
    let (ia, ib) = (inv(a, &oa), inv(b, &ob));
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (ia[v][0], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ia: &[[usize; 5]],
        ib: &[[usize; 5]],
        oa: &[Vec<bool>],
        ob: &[Vec<bool>],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..ib.len() {
            if used[w] || ia[v] != ib[w] {
                continue;
            }
            let consistent = order[..k].iter().all(|&u| {
                let x = map[u];
                oa[u][v] == ob[x][w] && oa[v][u] == ob[w][x]
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(k + 1, order, map, used, ia, ib, oa, ob) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    go(0, &order, &mut map, &mut used, &ia, &ib, &oa, &ob)
}
