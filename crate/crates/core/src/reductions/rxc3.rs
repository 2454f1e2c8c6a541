use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wav::DEFAULT_BUDGET;

/// Restricted exact 3-cover: `q` elements and `q` triples, every element in
/// exactly three triples. Elements and set indices are 0-based here and
/// 1-based in every textual form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rxc3Instance {
    pub q: usize,
    pub sets: Vec<[usize; 3]>,
}

/// Indices of the chosen sets, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rxc3Solution {
    pub indices: Vec<usize>,
}

impl Rxc3Instance {
    /// Builds from 1-based triples, as written in files.
    pub fn from_one_based(q: usize, sets: &[[usize; 3]]) -> Result<Self> {
        let mut out = Vec::with_capacity(sets.len());
        for s in sets {
            if s.contains(&0) {
                return Err(Error::InvalidRxc3("elements are numbered from 1".into()));
            }
            out.push([s[0] - 1, s[1] - 1, s[2] - 1]);
        }
        let inst = Rxc3Instance { q, sets: out };
        validate_rxc3(&inst)?;
        Ok(inst)
    }

    /// Whether element `x` lies in set `j`.
    pub fn contains(&self, j: usize, x: usize) -> bool {
        self.sets[j].contains(&x)
    }

    /// Sets containing element `x`, ascending.
    pub fn sets_of(&self, x: usize) -> Vec<usize> {
        (0..self.sets.len())
            .filter(|&j| self.contains(j, x))
            .collect()
    }

    /// `copies` disjoint copies side by side; copy `r` shifts everything by `r·q`.
    pub fn duplicate(&self, copies: usize) -> Rxc3Instance {
        let q = self.q;
        let sets = (0..copies)
            .flat_map(|r| self.sets.iter().map(move |s| s.map(|x| x + r * q)))
            .collect();
        Rxc3Instance {
            q: q * copies,
            sets,
        }
    }
}

impl fmt::Display for Rxc3Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|j| format!("S{}", j + 1)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn validate_rxc3(inst: &Rxc3Instance) -> Result<()> {
    let q = inst.q;
    if q == 0 || !q.is_multiple_of(3) {
        return Err(Error::InvalidRxc3(format!(
            "q = {q} must be a positive multiple of 3"
        )));
    }
    if inst.sets.len() != q {
        return Err(Error::InvalidRxc3(format!(
            "expected {q} sets, found {}",
            inst.sets.len()
        )));
    }
    let mut seen = vec![0usize; q];
    for (j, s) in inst.sets.iter().enumerate() {
        if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
            return Err(Error::InvalidRxc3(format!(
                "set {} repeats an element",
                j + 1
            )));
        }
        for &x in s {
            if x >= q {
                return Err(Error::InvalidRxc3(format!(
                    "set {} mentions element {} outside 1..{q}",
                    j + 1,
                    x + 1
                )));
            }
            seen[x] += 1;
        }
    }
    if let Some(x) = seen.iter().position(|&n| n != 3) {
        return Err(Error::InvalidRxc3(format!(
            "element {} occurs in {} sets instead of 3",
            x + 1,
            seen[x]
        )));
    }
    Ok(())
}

/// Checks that `sol` picks sets partitioning the elements.
pub fn check_solution(inst: &Rxc3Instance, sol: &Rxc3Solution) -> Result<()> {
    if sol.indices.len() != inst.q / 3 {
        return Err(Error::InvalidCover(format!(
            "{} sets chosen, need {}",
            sol.indices.len(),
            inst.q / 3
        )));
    }
    let mut covered = vec![false; inst.q];
    for &j in &sol.indices {
        let set = inst
            .sets
            .get(j)
            .ok_or_else(|| Error::InvalidCover(format!("no set S{}", j + 1)))?;
        for &x in set {
            if std::mem::replace(&mut covered[x], true) {
                return Err(Error::InvalidCover(format!(
                    "element {} covered twice",
                    x + 1
                )));
            }
        }
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Lexicographically first exact cover, or `None`.
pub fn solve_rxc3_bruteforce(inst: &Rxc3Instance) -> Result<Option<Rxc3Solution>> {
    solve_rxc3_with_budget(inst, DEFAULT_BUDGET)
}

pub fn solve_rxc3_with_budget(inst: &Rxc3Instance, budget: u128) -> Result<Option<Rxc3Solution>> {
    validate_rxc3(inst)?;
    let needed = binomial(inst.q, inst.q / 3);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    fn go(inst: &Rxc3Instance, from: usize, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == inst.q / 3 {
            return true;
        }
        let left = inst.q / 3 - chosen.len();
        for j in from..=inst.q - left {
            let s = inst.sets[j];
            if s.iter().any(|&x| covered[x]) {
                continue;
            }
            s.iter().for_each(|&x| covered[x] = true);
            chosen.push(j);
            if go(inst, j + 1, covered, chosen) {
                return true;
            }
            chosen.pop();
            s.iter().for_each(|&x| covered[x] = false);
        }
        false
    }

    let mut chosen = Vec::new();
    let found = go(inst, 0, &mut vec![false; inst.q], &mut chosen);
    Ok(found.then_some(Rxc3Solution { indices: chosen }))
}

/// Duplicates the instance just enough times that `divisor` divides `q`.
pub fn preprocess_rxc3(inst: &Rxc3Instance, divisor: usize) -> Result<Rxc3Instance> {
    validate_rxc3(inst)?;
    if divisor == 0 {
        return Err(Error::InvalidRxc3("divisor must be positive".into()));
    }
    let copies = divisor / inst.q.gcd(&divisor);
    Ok(if copies == 1 {
        inst.clone()
    } else {
        inst.duplicate(copies)
    })
}
