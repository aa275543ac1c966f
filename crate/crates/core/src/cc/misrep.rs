use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::model::Profile;

/// Exact nonnegative cost.
pub type Cost = BigRational;

/// How much a voter dislikes being represented by a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MisrepModel {
    /// `r(v, c) = s[pos_v(c) - 1]`.
    Positional(Vec<Cost>),
    /// `r(v, c) = table[v - 1][c]`, one row per voter in candidate order.
    Matrix(Vec<Vec<Cost>>),
    /// Approved candidates (by index) of each voter: cost 0 if approved, 1
    /// otherwise.
    Approval(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongLength {
        expected: usize,
        found: usize,
    },
    FirstNotZero(Cost),
    Decreasing {
        position: usize,
    },
    WrongRowCount {
        expected: usize,
        found: usize,
    },
    WrongRowLength {
        voter: usize,
        expected: usize,
        found: usize,
    },
    Negative {
        voter: usize,
        candidate: usize,
    },
    UnknownCandidate {
        voter: usize,
        candidate: usize,
    },
    /// `voter` ranks `better` above `worse` but `r(better) > r(worse)`.
    NotMonotone {
        voter: usize,
        better: usize,
        worse: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { expected, found } => {
                write!(f, "positional vector has {found} entries, expected {expected}")
            }
            Violation::FirstNotZero(s) => write!(f, "first positional entry is {s}, must be 0"),
            Violation::Decreasing { position } => {
                write!(
                    f,
                    "positional entry {} is smaller than entry {}",
                    position + 1,
                    position
                )
            }
            Violation::WrongRowCount { expected, found } => {
                write!(f, "matrix has {found} rows, expected {expected}")
            }
            Violation::WrongRowLength {
                voter,
                expected,
                found,
            } => {
                write!(f, "row {voter} has {found} entries, expected {expected}")
            }
            Violation::Negative { voter, candidate } => {
                write!(f, "negative cost for voter {voter}, candidate {candidate}")
            }
            Violation::UnknownCandidate { voter, candidate } => {
                write!(f, "voter {voter} approves unknown candidate {candidate}")
            }
            Violation::NotMonotone { voter, better, worse } => write!(
                f,
                "voter {voter} ranks candidate {better} above {worse} but dislikes it more"
            ),
        }
    }
}

impl MisrepModel {
    /// Borda costs `(0, 1, ..., m - 1)`.
    pub fn borda(m: usize) -> Self {
        MisrepModel::Positional((0..m).map(|i| Cost::from_integer(i.into())).collect())
    }

    /// Checks every invariant against `p` and, if they hold, materialises the
    /// voter-by-candidate cost table.
    pub fn validate(&self, p: &Profile) -> Result<Misrep, Vec<Violation>> {
        let (n, m) = (p.n(), p.m());
        let mut violations = Vec::new();
        let table: Vec<Vec<Cost>> = match self {
            MisrepModel::Positional(s) => {
                if s.len() != m {
                    return Err(vec![Violation::WrongLength {
                        expected: m,
                        found: s.len(),
                    }]);
                }
                if !s[0].is_zero() {
                    violations.push(Violation::FirstNotZero(s[0].clone()));
                }
                for i in 1..m {
                    if s[i] < s[i - 1] {
                        violations.push(Violation::Decreasing { position: i });
                    }
                }
                if !violations.is_empty() {
                    return Err(violations);
                }
                (1..=n)
                    .map(|v| {
                        let order = p.voter(v);
                        (0..m).map(|c| s[order.position(c) - 1].clone()).collect()
                    })
                    .collect()
            }
            MisrepModel::Matrix(rows) => {
                if rows.len() != n {
                    return Err(vec![Violation::WrongRowCount {
                        expected: n,
                        found: rows.len(),
                    }]);
                }
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != m {
                        violations.push(Violation::WrongRowLength {
                            voter: i + 1,
                            expected: m,
                            found: row.len(),
                        });
                    }
                }
                if !violations.is_empty() {
                    return Err(violations);
                }
                rows.clone()
            }
            MisrepModel::Approval(sets) => {
                if sets.len() != n {
                    return Err(vec![Violation::WrongRowCount {
                        expected: n,
                        found: sets.len(),
                    }]);
                }
                let mut table = vec![vec![Cost::from_integer(1.into()); m]; n];
                for (i, set) in sets.iter().enumerate() {
                    for &c in set {
                        if c >= m {
                            violations.push(Violation::UnknownCandidate {
                                voter: i + 1,
                                candidate: c,
                            });
                        } else {
                            table[i][c] = Cost::zero();
                        }
                    }
                }
                if !violations.is_empty() {
                    return Err(violations);
                }
                table
            }
        };

        for (i, row) in table.iter().enumerate() {
            let v = i + 1;
            for (c, x) in row.iter().enumerate() {
                if x.is_negative() {
                    violations.push(Violation::Negative {
                        voter: v,
                        candidate: c,
                    });
                }
            }
            let r = p.voter(v).ranking();
            for x in 0..m {
                for y in x + 1..m {
                    if row[r[x]] > row[r[y]] {
                        violations.push(Violation::NotMonotone {
                            voter: v,
                            better: r[x],
                            worse: r[y],
                        });
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(Misrep { table })
        } else {
            Err(violations)
        }
    }
}

/// A misrepresentation function validated against a specific profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Misrep {
    table: Vec<Vec<Cost>>,
}

impl Misrep {
    /// `r(v, c)` for 1-based voter `v` and candidate index `c`.
    pub fn value(&self, v: usize, c: usize) -> &Cost {
        &self.table[v - 1][c]
    }

    pub fn n(&self) -> usize {
        self.table.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelParseError {
    #[error("line {line}: `{token}` is not a rational number")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: unknown candidate `{name}`")]
    UnknownCandidate { line: usize, name: String },
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("unknown misrepresentation spec `{0}`; expected borda, positional:<list>, approval:<file> or matrix:<file>")]
    UnknownSpec(String),
}

/// Parses `3`, `-1/2`, `0.25` style rationals.
pub fn parse_rational(token: &str) -> Option<Cost> {
    if let Some((int, frac)) = token.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num = BigInt::from_str(&digits).ok()?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let value = Cost::new(num, den);
        return Some(if negative { -value } else { value });
    }
    Cost::from_str(token).ok()
}

impl MisrepModel {
    /// Comma-separated positional vector, e.g. `0,1,3/2,2`.
    pub fn parse_positional(list: &str) -> Result<Self, ModelParseError> {
        list.split(',')
            .map(|tok| {
                let tok = tok.trim();
                parse_rational(tok).ok_or_else(|| ModelParseError::BadNumber {
                    line: 1,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<_, _>>()
            .map(MisrepModel::Positional)
    }

    /// `n` rows of `m` rationals, columns in candidate order.
    pub fn parse_matrix(text: &str, p: &Profile) -> Result<Self, ModelParseError> {
        let rows: Vec<Vec<Cost>> = data_lines(text)
            .map(|(line, body)| {
                body.split_whitespace()
                    .map(|tok| {
                        parse_rational(tok).ok_or_else(|| ModelParseError::BadNumber {
                            line,
                            token: tok.to_string(),
                        })
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        if rows.len() != p.n() {
            return Err(ModelParseError::RowCount {
                expected: p.n(),
                found: rows.len(),
            });
        }
        Ok(MisrepModel::Matrix(rows))
    }

    /// One line per voter listing the approved candidate names. A line
    /// holding only `-` approves nobody.
    pub fn parse_approval(text: &str, p: &Profile) -> Result<Self, ModelParseError> {
        let sets: Vec<Vec<usize>> = data_lines(text)
            .map(|(line, body)| {
                body.split_whitespace()
                    .filter(|&t| t != "-")
                    .map(|name| {
                        p.candidate_index(name)
                            .ok_or_else(|| ModelParseError::UnknownCandidate {
                                line,
                                name: name.to_string(),
                            })
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        if sets.len() != p.n() {
            return Err(ModelParseError::RowCount {
                expected: p.n(),
                found: sets.len(),
            });
        }
        Ok(MisrepModel::Approval(sets))
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q(n: i64) -> Cost {
        Cost::from_integer(n.into())
    }

    #[test]
    fn borda_values() {
        let p = fixtures::smallstar();
        let r = MisrepModel::borda(4).validate(&p).unwrap();
        // voter 2 ranks a c b d
        assert_eq!(r.value(2, 2), &q(1));
        for v in 1..=4 {
            assert_eq!(r.value(v, p.voter(v).top()), &q(0));
        }
    }

    #[test]
    fn approval_values() {
        let p = fixtures::smallstar();
        // voter 1 approves her top two: a, b
        let model = MisrepModel::Approval(vec![vec![0, 1], vec![0], vec![3, 0, 2], vec![]]);
        let r = model.validate(&p).unwrap();
        assert_eq!(r.value(1, 2), &q(1));
        assert_eq!(r.value(1, 1), &q(0));
        assert_eq!(r.value(4, 2), &q(1));
    }

    #[test]
    fn approval_must_be_top_segment() {
        let p = fixtures::smallstar();
        let model = MisrepModel::Approval(vec![vec![1], vec![0], vec![3], vec![2]]);
        let err = model.validate(&p).unwrap_err();
        assert_eq!(
            err,
            [Violation::NotMonotone {
                voter: 1,
                better: 0,
                worse: 1
            }]
        );
    }

    #[test]
    fn positional_violations() {
        let p = fixtures::smallstar();
        assert!(MisrepModel::borda(4).validate(&p).is_ok());
        let bad = MisrepModel::Positional(vec![q(1), q(2), q(3), q(4)]);
        assert_eq!(bad.validate(&p).unwrap_err(), [Violation::FirstNotZero(q(1))]);
        let bad = MisrepModel::Positional(vec![q(0), q(2), q(1), q(4)]);
        assert_eq!(
            bad.validate(&p).unwrap_err(),
            [Violation::Decreasing { position: 2 }]
        );
        let bad = MisrepModel::Positional(vec![q(0), q(1)]);
        assert_eq!(
            bad.validate(&p).unwrap_err(),
            [Violation::WrongLength {
                expected: 4,
                found: 2
            }]
        );
    }

    #[test]
    fn matrix_monotonicity_breach() {
        let p = fixtures::two();
        // voter 1 ranks a1 a2 but r(a1) = 2 > r(a2) = 1
        let model = MisrepModel::Matrix(vec![vec![q(2), q(1)], vec![q(1), q(0)]]);
        assert_eq!(
            model.validate(&p).unwrap_err(),
            [Violation::NotMonotone {
                voter: 1,
                better: 0,
                worse: 1
            }]
        );
        let neg = MisrepModel::Matrix(vec![vec![q(-1), q(1)], vec![q(1), q(0)]]);
        assert_eq!(
            neg.validate(&p).unwrap_err(),
            [Violation::Negative {
                voter: 1,
                candidate: 0
            }]
        );
    }

    #[test]
    fn parses_models() {
        let p = fixtures::two();
        assert_eq!(
            MisrepModel::parse_positional("0, 3/2").unwrap(),
            MisrepModel::Positional(vec![q(0), Cost::new(3.into(), 2.into())])
        );
        assert_eq!(parse_rational("0.25"), Some(Cost::new(1.into(), 4.into())));
        assert_eq!(parse_rational("-1.5"), Some(Cost::new((-3).into(), 2.into())));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1."), None);
        let m = MisrepModel::parse_matrix("# costs\n0 1\n2 0\n", &p).unwrap();
        assert_eq!(m, MisrepModel::Matrix(vec![vec![q(0), q(1)], vec![q(2), q(0)]]));
        assert!(matches!(
            MisrepModel::parse_matrix("0 1\n", &p),
            Err(ModelParseError::RowCount {
                expected: 2,
                found: 1
            })
        ));
        let a = MisrepModel::parse_approval("a1\n-\n", &p).unwrap();
        assert_eq!(a, MisrepModel::Approval(vec![vec![0], vec![]]));
        assert!(matches!(
            MisrepModel::parse_approval("a1\nzz\n", &p),
            Err(ModelParseError::UnknownCandidate { line: 2, .. })
        ));
    }
}
