use super::{FinitePoset, PosetError, PosetMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `X₁`, downward closed.
    Lower,
    /// `X₂ = λ(X₁)`, upward closed.
    Upper,
    /// `X₃`, the fixed points of `λ`.
    Fixed,
}

/// A partition `(X₁, X₂, X₃)` of the ground set attached to an involution `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaDecomposition {
    sides: Vec<Side>,
}

impl LambdaDecomposition {
    pub fn side(&self, x: usize) -> Side {
        self.sides[x]
    }

    pub fn x1(&self) -> Vec<usize> {
        self.members(Side::Lower)
    }

    pub fn x2(&self) -> Vec<usize> {
        self.members(Side::Upper)
    }

    pub fn x3(&self) -> Vec<usize> {
        self.members(Side::Fixed)
    }

    fn members(&self, side: Side) -> Vec<usize> {
        (0..self.sides.len()).filter(|&x| self.sides[x] == side).collect()
    }

    /// Checks the three defining conditions against `λ`.
    pub fn validate(&self, poset: &FinitePoset, lambda: &PosetMap) -> Result<(), PosetError> {
        let n = poset.len();
        if self.sides.len() != n || lambda.len() != n {
            return Err(PosetError::Decomposition);
        }
        for x in 0..n {
            let fixed = lambda.apply(x) == x;
            let ok = match self.sides[x] {
                Side::Fixed => fixed,
                Side::Lower => !fixed && self.sides[lambda.apply(x)] == Side::Upper,
                Side::Upper => !fixed && self.sides[lambda.apply(x)] == Side::Lower,
            };
            if !ok {
                return Err(PosetError::Decomposition);
            }
            for y in 0..n {
                if poset.leq(y, x) && self.sides[x] == Side::Lower && self.sides[y] != Side::Lower {
                    return Err(PosetError::Decomposition);
                }
                if poset.leq(x, y) && self.sides[x] == Side::Upper && self.sides[y] != Side::Upper {
                    return Err(PosetError::Decomposition);
                }
            }
        }
        Ok(())
    }
}

/// Computes a λ-decomposition.
///
/// Choosing which member of each 2-cycle `{x, λ(x)}` lands in `X₁` is a 2-SAT
/// instance: `y < x` gives the implication `x ∈ X₁ ⇒ y ∈ X₁`, a fixed point
/// below `x` forbids `x ∈ X₁`, and a fixed point above `y` forces `y ∈ X₁`.
/// Each cycle is decided in index order by trying `min ∈ X₁` with unit
/// propagation and falling back to the opposite literal; for 2-SAT this never
/// needs deeper backtracking. The result is validated before it is returned.
pub fn lambda_decomposition(poset: &FinitePoset, lambda: &PosetMap) -> Result<LambdaDecomposition, PosetError> {
    let n = poset.len();
    let mut var_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        let y = lambda.apply(x);
        if y != x && var_of[x] == usize::MAX {
            var_of[x] = reps.len();
            var_of[y] = reps.len();
            reps.push(x.min(y));
        }
    }
    // literal index: 2 * var + (1 if "rep ∈ X₁" else 0)
    let lit = |z: usize| 2 * var_of[z] + usize::from(reps[var_of[z]] == z);
    let neg = |l: usize| l ^ 1;
    let mut implications = vec![Vec::new(); 2 * reps.len()];
    let mut units = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !poset.lt(y, x) {
                continue;
            }
            let fx = lambda.apply(x) == x;
            let fy = lambda.apply(y) == y;
            match (fy, fx) {
                (false, false) => {
                    implications[lit(x)].push(lit(y));
                    implications[neg(lit(y))].push(neg(lit(x)));
                }
                (true, false) => units.push(neg(lit(x))),
                (false, true) => units.push(lit(y)),
                (true, true) => return Err(PosetError::NotAnInvolution),
            }
        }
    }

    let mut value: Vec<Option<bool>> = vec![None; reps.len()];
    for &u in &units {
        if !propagate(u, &implications, &mut value) {
            return Err(PosetError::Decomposition);
        }
    }
    for v in 0..reps.len() {
        if value[v].is_some() {
            continue;
        }
        let snapshot = value.clone();
        if propagate(2 * v + 1, &implications, &mut value) {
            continue;
        }
        value = snapshot;
        if !propagate(2 * v, &implications, &mut value) {
            return Err(PosetError::Decomposition);
        }
    }

    let sides = (0..n)
        .map(|z| {
            if lambda.apply(z) == z {
                Side::Fixed
            } else {
                let v = var_of[z];
                let rep_in_x1 = value[v].expect("all variables assigned");
                if (reps[v] == z) == rep_in_x1 {
                    Side::Lower
                } else {
                    Side::Upper
                }
            }
        })
        .collect();
    let decomposition = LambdaDecomposition { sides };
    decomposition.validate(poset, lambda)?;
    Ok(decomposition)
}

fn propagate(start: usize, implications: &[Vec<usize>], value: &mut [Option<bool>]) -> bool {
    let mut stack = vec![start];
    while let Some(l) = stack.pop() {
        let (v, b) = (l / 2, l % 2 == 1);
        match value[v] {
            Some(cur) if cur == b => continue,
            Some(_) => return false,
            None => value[v] = Some(b),
        }
        stack.extend(implications[l].iter().copied());
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{catalog, enumerate_involutions};

    #[test]
    fn three_chain() {
        let p = catalog::chain(3);
        let lambda = PosetMap::involution(&p, vec![2, 1, 0]).unwrap();
        let d = lambda_decomposition(&p, &lambda).unwrap();
        assert_eq!((d.x1(), d.x2(), d.x3()), (vec![0], vec![2], vec![1]));
    }

    #[test]
    fn diamond_with_fixed_middle() {
        let p = catalog::diamond();
        let lambda = PosetMap::involution(&p, vec![3, 1, 2, 0]).unwrap();
        let d = lambda_decomposition(&p, &lambda).unwrap();
        assert_eq!((d.x1(), d.x2(), d.x3()), (vec![0], vec![3], vec![1, 2]));
        assert!(!p.comparable(1, 2));
    }

    #[test]
    fn two_chain_has_no_fixed_points() {
        let p = catalog::chain(2);
        let lambda = PosetMap::involution(&p, vec![1, 0]).unwrap();
        let d = lambda_decomposition(&p, &lambda).unwrap();
        assert_eq!((d.x1(), d.x2(), d.x3()), (vec![0], vec![1], vec![]));
    }

    #[test]
    fn every_small_involution_decomposes() {
        for n in 1..=6 {
            for p in catalog::connected_posets(n) {
                for lambda in enumerate_involutions(&p) {
                    let d = lambda_decomposition(&p, &lambda).unwrap();
                    d.validate(&p, &lambda).unwrap();
                    let x3 = d.x3();
                    for &a in &x3 {
                        for &b in &x3 {
                            assert!(a == b || !p.comparable(a, b), "X₃ must be an antichain");
                        }
                    }
                    for x in d.x1() {
                        assert_eq!(d.side(lambda.apply(x)), Side::Upper);
                    }
                }
            }
        }
    }

    #[test]
    fn validate_rejects_wrong_sides() {
        let p = catalog::chain(2);
        let lambda = PosetMap::involution(&p, vec![1, 0]).unwrap();
        let bad = LambdaDecomposition {
            sides: vec![Side::Upper, Side::Lower],
        };
        assert_eq!(bad.validate(&p, &lambda), Err(PosetError::Decomposition));
    }
}
