use std::fmt;

use crate::clopen::Cylinder;
use crate::element::GroupElement;
use crate::error::Result;

/// A product of basic moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveExpr {
    Tpow(i64),
    Delta(Cylinder),
    Tau(Cylinder),
    Psi(Cylinder, i64, i64),
    Product(Vec<MoveExpr>),
    Inverse(Box<MoveExpr>),
    Power(Box<MoveExpr>, i64),
}

/// Evaluates directly in the full group, without going through generators.
pub fn eval_expr(e: &MoveExpr) -> Result<GroupElement> {
    match e {
        MoveExpr::Tpow(k) => GroupElement::power_of_t(*k),
        MoveExpr::Delta(c) => GroupElement::delta(&c.to_set()?),
        MoveExpr::Tau(c) => GroupElement::tau(&c.to_set()?),
        MoveExpr::Psi(c, m, n) => GroupElement::psi(&c.to_set()?, *m, *n),
        MoveExpr::Product(parts) => {
            let mut acc = GroupElement::identity();
            for p in parts.iter().rev() {
                acc = eval_expr(p)?.compose(&acc)?;
            }
            Ok(acc)
        }
        MoveExpr::Inverse(inner) => eval_expr(inner)?.inverse(),
        MoveExpr::Power(inner, k) => eval_expr(inner)?.pow(*k),
    }
}

/// Prints in the expression grammar, so the output parses back to an equal
/// element.
impl fmt::Display for MoveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveExpr::Tpow(1) => write!(f, "T"),
            MoveExpr::Tpow(k) => write!(f, "T^{k}"),
            MoveExpr::Delta(c) => write!(f, "delta({c})"),
            MoveExpr::Tau(c) => write!(f, "tau({c})"),
            MoveExpr::Psi(c, m, n) => write!(f, "psi({c},{m},{n})"),
            MoveExpr::Product(parts) if parts.is_empty() => write!(f, "T^0"),
            MoveExpr::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|p| format!("({p})")).collect();
                write!(f, "{}", s.join("*"))
            }
            MoveExpr::Inverse(inner) => write!(f, "({inner})^-1"),
            MoveExpr::Power(inner, k) => write!(f, "({inner})^{k}"),
        }
    }
}
