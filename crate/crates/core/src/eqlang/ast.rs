use std::fmt;

/// A relation algebra term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Identity,
    Complement(Box<Term>),
    Converse(Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    Compose(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn complement(self) -> Term {
        Term::Complement(Box::new(self))
    }

    pub fn converse(self) -> Term {
        Term::Converse(Box::new(self))
    }

    pub fn join(self, other: Term) -> Term {
        Term::Join(Box::new(self), Box::new(other))
    }

    pub fn meet(self, other: Term) -> Term {
        Term::Meet(Box::new(self), Box::new(other))
    }

    pub fn compose(self, other: Term) -> Term {
        Term::Compose(Box::new(self), Box::new(other))
    }

    /// Operation symbols plus variable occurrences. Constants are nullary
    /// operation symbols and count one each.
    pub fn length(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::One | Term::Identity => 1,
            Term::Complement(t) | Term::Converse(t) => 1 + t.length(),
            Term::Join(a, b) | Term::Meet(a, b) | Term::Compose(a, b) => {
                1 + a.length() + b.length()
            }
        }
    }

    /// Pushes variable names onto `out` in first-occurrence order.
    pub fn collect_variables<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Var(v) => {
                if !out.contains(&v.as_str()) {
                    out.push(v);
                }
            }
            Term::Zero | Term::One | Term::Identity => {}
            Term::Complement(t) | Term::Converse(t) => t.collect_variables(out),
            Term::Join(a, b) | Term::Meet(a, b) | Term::Compose(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Join(..) => 0,
            Term::Meet(..) => 1,
            Term::Compose(..) => 2,
            Term::Complement(_) => 3,
            Term::Converse(_) => 4,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Identity => write!(f, "1'"),
            Term::Complement(t) => {
                write!(f, "-")?;
                t.fmt_at(f, 3)
            }
            // the grammar allows a single postfix `^` on a primary only
            Term::Converse(t) => {
                t.fmt_at(f, 5)?;
                write!(f, "^")
            }
            Term::Join(a, b) => binary(f, a, " + ", b, 0),
            Term::Meet(a, b) => binary(f, a, " . ", b, 1),
            Term::Compose(a, b) => binary(f, a, " ; ", b, 2),
        }
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Term, op: &str, b: &Term, level: u8) -> fmt::Result {
    a.fmt_at(f, level)?;
    write!(f, "{op}")?;
    b.fmt_at(f, level + 1)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn length(&self) -> usize {
        self.lhs.length() + self.rhs.length()
    }

    /// Distinct variables, left side before right, in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.lhs.collect_variables(&mut out);
        self.rhs.collect_variables(&mut out);
        out
    }

    pub fn num_variables(&self) -> usize {
        self.variables().len()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
