use std::fmt;

use super::{validate_group, FiniteGroup, GroupError};

/// Largest group order any constructor will produce.
pub const MAX_GROUP_ORDER: usize = 64;

/// Named small groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    /// Symmetries of the regular `n`-gon; order `2n`.
    Dihedral(usize),
    Quaternion8,
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    /// Parses `cyclic:n`, `symmetric:n`, `dihedral:n`, `quaternion8`,
    /// `trivial`, `klein` and `product:A,B` (parentheses may group nested
    /// factors, e.g. `product:(product:cyclic:2,cyclic:2),cyclic:3`).
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        let bad = || GroupError::BadSpec(s.to_string());
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            return Self::parse(inner);
        }
        match s {
            "trivial" => return Ok(GroupSpec::Cyclic(1)),
            "quaternion8" | "q8" => return Ok(GroupSpec::Quaternion8),
            "klein" => {
                return Ok(GroupSpec::Product(
                    Box::new(GroupSpec::Cyclic(2)),
                    Box::new(GroupSpec::Cyclic(2)),
                ))
            }
            _ => {}
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let number = || arg.trim().parse::<usize>().map_err(|_| bad());
        match kind.trim() {
            "cyclic" => Ok(GroupSpec::Cyclic(number()?)),
            "symmetric" => Ok(GroupSpec::Symmetric(number()?)),
            "dihedral" => Ok(GroupSpec::Dihedral(number()?)),
            "product" => {
                let split = top_level_comma(arg).ok_or_else(bad)?;
                let (a, b) = arg.split_at(split);
                Ok(GroupSpec::Product(
                    Box::new(Self::parse(a)?),
                    Box::new(Self::parse(&b[1..])?),
                ))
            }
            _ => Err(bad()),
        }
    }

    /// Order of the group this spec builds, without building it.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Symmetric(n) => (1..=*n).try_fold(1usize, |acc, k| acc.checked_mul(k)),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Quaternion8 => Some(8),
            GroupSpec::Product(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self.order() {
            Some(n) if (1..=MAX_GROUP_ORDER).contains(&n) => {}
            _ => return Err(GroupError::UnsupportedSize(self.to_string())),
        }
        match self {
            GroupSpec::Cyclic(n) => Ok(cyclic(*n)),
            GroupSpec::Symmetric(n) => Ok(symmetric(*n)),
            GroupSpec::Dihedral(n) => Ok(dihedral(*n)),
            GroupSpec::Quaternion8 => Ok(quaternion8()),
            GroupSpec::Product(a, b) => Ok(a.build()?.direct_product(&b.build()?)),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion8 => write!(f, "quaternion8"),
            GroupSpec::Product(a, b) => write!(f, "product:({a}),({b})"),
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    validate_group(table, 0)
        .unwrap()
        .with_labels(labels)
        .unwrap()
}

/// All permutations of `0..n` in lexicographic order; product is `σ∘τ`
/// (apply `τ` first).
fn symmetric(n: usize) -> FiniteGroup {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        perms.push(current.clone());
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
    let table = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| index(&t.iter().map(|&x| s[x]).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let labels = perms
        .iter()
        .map(|p| {
            let body: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            format!("[{}]", body.join(" "))
        })
        .collect();
    validate_group(table, 0)
        .unwrap()
        .with_labels(labels)
        .unwrap()
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Element `s^f r^k` has index `f * n + k`; `r^k s = s r^{-k}`.
fn dihedral(n: usize) -> FiniteGroup {
    let order = 2 * n;
    let mut table = vec![vec![0; order]; order];
    for (x, row) in table.iter_mut().enumerate() {
        let (f1, k1) = (x / n, x % n);
        for (y, cell) in row.iter_mut().enumerate() {
            let (f2, k2) = (y / n, y % n);
            let twisted = if f2 == 0 { k1 } else { (n - k1) % n };
            *cell = ((f1 + f2) % 2) * n + (twisted + k2) % n;
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (f, k) = (x / n, x % n);
            match (f, k) {
                (0, 0) => "e".to_string(),
                (0, k) => format!("r^{k}"),
                (_, 0) => "s".to_string(),
                (_, k) => format!("s r^{k}"),
            }
        })
        .collect();
    validate_group(table, 0)
        .unwrap()
        .with_labels(labels)
        .unwrap()
}

/// Order: 1, -1, i, -i, j, -j, k, -k.
fn quaternion8() -> FiniteGroup {
    // unit products for 1, i, j, k as (sign, unit)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut table = vec![vec![0; 8]; 8];
    for (x, row) in table.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            let (neg, unit) = UNIT[x / 2][y / 2];
            let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
            *cell = unit * 2 + usize::from(sign);
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    validate_group(table, 0)
        .unwrap()
        .with_labels(labels)
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_one_is_trivial() {
        let g = GroupSpec::Cyclic(1).build().unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn symmetric_three_is_nonabelian_of_order_six() {
        let g = GroupSpec::Symmetric(3).build().unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn klein_four_has_exponent_two() {
        let g = GroupSpec::parse("product:cyclic:2,cyclic:2")
            .unwrap()
            .build()
            .unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 2);
        assert_eq!(g.order_profile(), vec![1, 2, 2, 2]);
    }

    #[test]
    fn quaternion_profile() {
        let q = GroupSpec::Quaternion8.build().unwrap();
        assert_eq!(q.order_profile(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert!(!q.is_abelian());
    }

    #[test]
    fn dihedral_four_profile() {
        let d = GroupSpec::Dihedral(4).build().unwrap();
        assert_eq!(d.order(), 8);
        assert_eq!(d.order_profile(), vec![1, 2, 2, 2, 2, 2, 4, 4]);
    }

    #[test]
    fn oversized_requests_are_rejected() {
        assert!(matches!(
            GroupSpec::Symmetric(5).build(),
            Err(GroupError::UnsupportedSize(_))
        ));
        assert!(matches!(
            GroupSpec::Cyclic(65).build(),
            Err(GroupError::UnsupportedSize(_))
        ));
        assert!(matches!(
            GroupSpec::Cyclic(0).build(),
            Err(GroupError::UnsupportedSize(_))
        ));
    }

    #[test]
    fn parse_round_trips_through_display() {
        for s in ["cyclic:3", "symmetric:4", "dihedral:5", "quaternion8"] {
            assert_eq!(GroupSpec::parse(s).unwrap().to_string(), s);
        }
        let nested = GroupSpec::parse("product:(product:cyclic:2,cyclic:2),cyclic:3").unwrap();
        assert_eq!(nested.order(), Some(12));
        assert_eq!(GroupSpec::parse(&nested.to_string()).unwrap(), nested);
        assert!(GroupSpec::parse("cyclic").is_err());
        assert!(GroupSpec::parse("mystery:3").is_err());
    }
}
