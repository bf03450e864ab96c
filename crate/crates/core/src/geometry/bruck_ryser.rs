//! The Bruck–Ryser nonexistence test for projective planes.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BrOutcome {
    RulesOut,
    NoConclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrVerdict {
    pub order: u64,
    pub outcome: BrOutcome,
    /// `order mod 4`.
    pub residue: u64,
    /// Largest `a` tried when searching `order = a² + b²`, if a search ran.
    pub search_bound: Option<u64>,
    /// A representation as a sum of two squares, when one was found.
    pub squares: Option<(u64, u64)>,
}

impl BrVerdict {
    pub fn rules_out(&self) -> bool {
        self.outcome == BrOutcome::RulesOut
    }
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = ((n as f64).sqrt() as u64).min(u32::MAX as u64);
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Searches `0 ≤ a ≤ √n` for `n = a² + b²`; the first hit has `a ≤ b`.
pub fn sum_of_two_squares(n: u64) -> Option<(u64, u64)> {
    (0..=isqrt(n)).find_map(|a| {
        let rest = n - a * a;
        let b = isqrt(rest);
        (b * b == rest).then_some((a, b))
    })
}

/// A plane of order `q ≡ 1, 2 (mod 4)` can exist only if `q` is a sum of two
/// squares.
pub fn bruck_ryser(q: u64) -> BrVerdict {
    let residue = q % 4;
    if residue != 1 && residue != 2 {
        return BrVerdict {
            order: q,
            outcome: BrOutcome::NoConclusion,
            residue,
            search_bound: None,
            squares: None,
        };
    }
    let squares = sum_of_two_squares(q);
    BrVerdict {
        order: q,
        outcome: if squares.is_some() {
            BrOutcome::NoConclusion
        } else {
            BrOutcome::RulesOut
        },
        residue,
        search_bound: Some(isqrt(q)),
        squares,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert!(bruck_ryser(54).rules_out());
        assert!(bruck_ryser(6).rules_out());
        assert_eq!(bruck_ryser(10).squares, Some((1, 3)));
        assert!(!bruck_ryser(10).rules_out());
        assert_eq!(bruck_ryser(4).search_bound, None);
        assert!(!bruck_ryser(4).rules_out());
    }

    #[test]
    fn isqrt_is_floor() {
        for n in 0..5000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u32::MAX as u64 * u32::MAX as u64), u32::MAX as u64);
    }
}
