//! Formulas compiled to postfix programs for repeated evaluation.
//!
//! Sphere frames and V-algebras both interpret formulas as subsets of a
//! finite index set with the Boolean operations taken set-theoretically,
//! so one evaluator serves both.

use crate::bits::Mask;
use crate::syntax::Formula;

/// A powerset Boolean algebra with a binary operator for `⊡→`.
pub trait Structure {
    /// The top element.
    fn top(&self) -> Mask;
    fn cf(&self, a: Mask, b: Mask) -> Mask;
}

#[derive(Clone, Debug)]
pub struct Compiled {
    ops: Vec<Op>,
    depth: usize,
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Var(usize),
    Bot,
    Top,
    And,
    Or,
    Imp,
    Cf,
}

impl Compiled {
    /// Compiles `f`, numbering variables by their position in `vars`.
    /// Variables missing from `vars` denote the bottom element.
    pub fn new(f: &Formula, vars: &[String]) -> Compiled {
        fn go(f: &Formula, vars: &[String], ops: &mut Vec<Op>) {
            match f {
                Formula::Var(v) => ops.push(match vars.iter().position(|x| x == v) {
                    Some(i) => Op::Var(i),
                    None => Op::Bot,
                }),
                Formula::Bot => ops.push(Op::Bot),
                Formula::Top => ops.push(Op::Top),
                Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Cf(l, r) => {
                    go(l, vars, ops);
                    go(r, vars, ops);
                    ops.push(match f {
                        Formula::And(..) => Op::And,
                        Formula::Or(..) => Op::Or,
                        Formula::Imp(..) => Op::Imp,
                        _ => Op::Cf,
                    });
                }
            }
        }
        let mut ops = Vec::with_capacity(f.size());
        go(f, vars, &mut ops);
        Compiled {
            ops,
            depth: f.depth() + 2,
        }
    }

    /// The value of the formula under `vals` (indexed like `vars`).
    pub fn eval<S: Structure + ?Sized>(&self, s: &S, vals: &[Mask]) -> Mask {
        const INLINE: usize = 32;
        if self.depth <= INLINE {
            self.run(s, vals, &mut [0; INLINE])
        } else {
            self.run(s, vals, &mut vec![0; self.depth])
        }
    }

    fn run<S: Structure + ?Sized>(&self, s: &S, vals: &[Mask], stack: &mut [Mask]) -> Mask {
        let top = s.top();
        let mut sp = 0;
        for op in &self.ops {
            let v = match *op {
                Op::Var(i) => vals[i],
                Op::Bot => 0,
                Op::Top => top,
                _ => {
                    sp -= 2;
                    let (l, r) = (stack[sp], stack[sp + 1]);
                    match *op {
                        Op::And => l & r,
                        Op::Or => l | r,
                        Op::Imp => (!l | r) & top,
                        _ => s.cf(l, r),
                    }
                }
            };
            stack[sp] = v;
            sp += 1;
        }
        stack[0]
    }
}
