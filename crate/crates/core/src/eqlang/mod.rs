//! Relation algebra equations: syntax, measurement and model checking.

mod ast;
mod eval;
mod parser;

pub use ast::{Equation, Term};
pub use eval::{default_workers, evaluate, holds, holds_with_workers, CheckResult, EvalError};
pub use parser::{parse_equation, parse_term, ParseError, ParseErrorKind};

/// Number of operation symbols and variable occurrences.
pub fn length(eq: &Equation) -> usize {
    eq.length()
}

pub fn num_variables(eq: &Equation) -> usize {
    eq.num_variables()
}

/// Shortest possible length of an equation in `k` distinct variables.
///
/// `k` variable occurrences need at least `k - 2` binary symbols to be joined
/// into two terms, giving `2k - 2`; a single variable still occurs on both
/// sides of any equation that mentions it, so the floor is 2.
pub fn min_length_lower_bound(k: usize) -> usize {
    (2 * k).saturating_sub(2).max(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_lower_bound() {
        assert_eq!(min_length_lower_bound(5), 8);
        assert_eq!(min_length_lower_bound(3), 4);
        assert_eq!(min_length_lower_bound(2), 2);
        assert_eq!(min_length_lower_bound(1), 2);
    }

    #[test]
    fn counts() {
        let eq = parse_equation("x1;x2 = x2;x1").unwrap();
        assert_eq!(num_variables(&eq), 2);
        assert_eq!(length(&eq), 6);
    }
}
