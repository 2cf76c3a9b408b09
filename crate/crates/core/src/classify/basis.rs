//! Evaluation of a multilinear polynomial on tuples of basis elements.
//!
//! In `J_n` a product of two basis elements is again a basis element or
//! zero (`e_0∘e_k = e_k`, `e_k∘e_k = e_0`, `e_j∘e_k = 0` otherwise), so a
//! monomial evaluated on basis elements is either `0` or exactly one `e_k`
//! with coefficient 1. The polynomial value then only needs integer
//! accumulation of (scaled) coefficients.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::poly::{MTree, Polynomial};

const VANISHED: u8 = u8::MAX;

#[derive(Debug, Clone, Copy)]
enum Op {
    Slot(u8),
    Mul,
}

#[derive(Debug, Clone)]
struct Program {
    ops: Vec<Op>,
    coeff: i64,
}

/// Compiled form of a polynomial for basis-tuple sweeps.
#[derive(Debug, Clone)]
pub(crate) struct BasisEvaluator {
    programs: Vec<Program>,
    n: usize,
}

/// Which parts of a basic evaluation are nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct Support {
    pub real: bool,
    pub pure: bool,
}

impl BasisEvaluator {
    /// `None` when the integer coefficients could overflow `i64`
    /// accumulation; callers fall back to exact rational evaluation.
    pub fn compile(p: &Polynomial, n: usize) -> Option<BasisEvaluator> {
        if n > usize::from(VANISHED) || p.arity() > u32::from(u8::MAX) {
            return None;
        }
        let (_, terms) = p.integer_coefficients();
        let total: BigInt = terms.iter().map(|(_, c)| c.abs()).sum();
        if total > BigInt::from(i64::MAX) {
            return None;
        }
        let programs = terms
            .iter()
            .map(|(m, c)| {
                let mut ops = Vec::with_capacity(2 * m.degree());
                compile_tree(m.tree(), &mut ops);
                Program {
                    ops,
                    coeff: c.to_i64().expect("bounded by total"),
                }
            })
            .collect();
        Some(BasisEvaluator { programs, n })
    }

    /// Coefficient vector of the value (scaled by the common denominator)
    /// in the basis `e_0, …, e_{n−1}`, written into `acc`.
    pub fn eval_into(&self, tuple: &[u8], acc: &mut [i64], stack: &mut Vec<u8>) {
        acc.iter_mut().for_each(|c| *c = 0);
        for program in &self.programs {
            stack.clear();
            for op in &program.ops {
                match *op {
                    Op::Slot(s) => stack.push(tuple[usize::from(s)]),
                    Op::Mul => {
                        let b = stack.pop().expect("well-formed program");
                        let a = stack.pop().expect("well-formed program");
                        stack.push(basis_product(a, b));
                    }
                }
            }
            let k = stack[0];
            if k != VANISHED {
                acc[usize::from(k)] += program.coeff;
            }
        }
    }

    pub fn support(&self, tuple: &[u8], acc: &mut [i64], stack: &mut Vec<u8>) -> Support {
        self.eval_into(tuple, acc, stack);
        Support {
            real: acc[0] != 0,
            pure: acc[1..self.n].iter().any(|c| *c != 0),
        }
    }
}

fn basis_product(a: u8, b: u8) -> u8 {
    match (a, b) {
        (VANISHED, _) | (_, VANISHED) => VANISHED,
        (0, k) | (k, 0) => k,
        (j, k) if j == k => 0,
        _ => VANISHED,
    }
}

fn compile_tree(tree: &MTree, ops: &mut Vec<Op>) {
    match tree {
        MTree::Leaf(v) => {
            let slot = u8::try_from(v.index() - 1).expect("arity checked at compile");
            ops.push(Op::Slot(slot));
        }
        MTree::Node(l, r) => {
            compile_tree(l, ops);
            compile_tree(r, ops);
            ops.push(Op::Mul);
        }
    }
}
