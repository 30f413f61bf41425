//! Term-rewriting model of the free commutative tri-algebra, independent of the
//! closed-form `(M, N)` products in the library.
//!
//! Every rule is an oriented instance of the defining identities
//!
//! ```text
//! (x*y)*z = x*(y*z) = x*(z*y)      x.y = y.x      (x.y).z = x.(y.z)
//! x*(y.z) = x*(y*z)                (x.y)*z = x.(y*z)
//! ```
//!
//! Normal forms are a bullet block `g₁.(g₂.(… gₖ))` of sorted generators, or
//! `block * (h₁*(h₂*(… hₘ)))` with the tail sorted.

#![allow(dead_code)]

use tricochain::free::ComTriMonomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Gen(usize),
    Star(Box<Term>, Box<Term>),
    Bullet(Box<Term>, Box<Term>),
}

pub fn g(i: usize) -> Term {
    Term::Gen(i)
}

pub fn star(a: Term, b: Term) -> Term {
    Term::Star(Box::new(a), Box::new(b))
}

pub fn bullet(a: Term, b: Term) -> Term {
    Term::Bullet(Box::new(a), Box::new(b))
}

fn is_bullet_block(t: &Term) -> bool {
    match t {
        Term::Gen(_) => true,
        Term::Bullet(a, b) => matches!(**a, Term::Gen(_)) && is_bullet_block(b),
        Term::Star(..) => false,
    }
}

fn is_star_chain(t: &Term) -> bool {
    match t {
        Term::Gen(_) => true,
        Term::Star(a, b) => matches!(**a, Term::Gen(_)) && is_star_chain(b),
        Term::Bullet(..) => false,
    }
}

fn leaves(t: &Term, out: &mut Vec<usize>) {
    match t {
        Term::Gen(i) => out.push(*i),
        Term::Star(a, b) | Term::Bullet(a, b) => {
            leaves(a, out);
            leaves(b, out);
        }
    }
}

fn chain(gens: &[usize], op: fn(Term, Term) -> Term) -> Term {
    let (last, init) = gens.split_last().expect("nonempty");
    init.iter().rev().fold(g(*last), |acc, &i| op(g(i), acc))
}

fn sorted_leaves(t: &Term) -> Vec<usize> {
    let mut v = Vec::new();
    leaves(t, &mut v);
    v.sort_unstable();
    v
}

/// One rewrite at the root, if any rule applies.
fn root_step(t: &Term) -> Option<Term> {
    use Term::*;
    match t {
        Star(x, yz) => {
            // (x*y)*z -> x*(y*z)
            if let Star(a, b) = &**x {
                return Some(star((**a).clone(), star((**b).clone(), (**yz).clone())));
            }
            // children are normal, so x is a bullet block from here on
            match &**yz {
                // x*(y.z) -> x*(y*z)
                Bullet(y, z) => Some(star((**x).clone(), star((**y).clone(), (**z).clone()))),
                Star(y, z) => match &**y {
                    // x*((y*w)*z) -> x*(y*(w*z))
                    Star(a, b) => Some(star(
                        (**x).clone(),
                        star((**a).clone(), star((**b).clone(), (**z).clone())),
                    )),
                    // x*((y.w)*z) = x*(y.(w*z)) = x*(y*(w*z))
                    Bullet(a, b) => Some(star(
                        (**x).clone(),
                        star((**a).clone(), star((**b).clone(), (**z).clone())),
                    )),
                    Gen(_) => {
                        // x*T = x*T' for any permutation T' of a generator chain T:
                        // x*(y*z) = x*(z*y) swaps the last two factors and
                        // x*(y*(z*w)) = x*((z*w)*y) = x*(z*(w*y)) rotates.
                        if is_star_chain(yz) {
                            let sorted = chain(&sorted_leaves(yz), star);
                            (sorted != **yz).then(|| star((**x).clone(), sorted))
                        } else {
                            None
                        }
                    }
                },
                Gen(_) => None,
            }
        }
        Bullet(x, y) => {
            match (&**x, &**y) {
                // x.(y*z) -> (x.y)*z
                (_, Star(a, b)) => Some(star(bullet((**x).clone(), (**a).clone()), (**b).clone())),
                // (a*b).y -> y.(a*b)
                (Star(..), _) => Some(bullet((**y).clone(), (**x).clone())),
                // (a.b).c -> a.(b.c)
                (Bullet(a, b), _) => {
                    Some(bullet((**a).clone(), bullet((**b).clone(), (**y).clone())))
                }
                // generator blocks: commutativity and associativity permute freely
                _ => {
                    if is_bullet_block(t) {
                        let sorted = chain(&sorted_leaves(t), bullet);
                        (sorted != *t).then_some(sorted)
                    } else {
                        None
                    }
                }
            }
        }
        Gen(_) => None,
    }
}

/// One innermost rewrite anywhere in the term.
fn step(t: &Term) -> Option<Term> {
    match t {
        Term::Gen(_) => None,
        Term::Star(a, b) => step(a)
            .map(|a2| star(a2, (**b).clone()))
            .or_else(|| step(b).map(|b2| star((**a).clone(), b2)))
            .or_else(|| root_step(t)),
        Term::Bullet(a, b) => step(a)
            .map(|a2| bullet(a2, (**b).clone()))
            .or_else(|| step(b).map(|b2| bullet((**a).clone(), b2)))
            .or_else(|| root_step(t)),
    }
}

pub fn normalize(t: &Term) -> Term {
    let mut cur = t.clone();
    for _ in 0..10_000 {
        match step(&cur) {
            Some(next) => cur = next,
            None => return cur,
        }
    }
    panic!("rewriting did not terminate on {t:?}");
}

/// Reads `(M, N)` off a normal form.
pub fn read_off(nf: &Term) -> (Vec<usize>, Vec<usize>) {
    if is_bullet_block(nf) {
        return (sorted_leaves(nf), Vec::new());
    }
    match nf {
        Term::Star(x, tail) if is_bullet_block(x) && is_star_chain(tail) => {
            (sorted_leaves(x), sorted_leaves(tail))
        }
        other => panic!("not a normal form: {other:?}"),
    }
}

/// Oracle value of a term as a library monomial.
pub fn oracle(t: &Term) -> ComTriMonomial {
    let (m, n) = read_off(&normalize(t));
    ComTriMonomial::new(m, n).expect("block is nonempty")
}

/// The same term evaluated with the library's closed-form products.
pub fn closed_form(t: &Term) -> ComTriMonomial {
    match t {
        Term::Gen(i) => ComTriMonomial::generator(*i),
        Term::Star(a, b) => closed_form(a).star(&closed_form(b)),
        Term::Bullet(a, b) => closed_form(a).bullet(&closed_form(b)),
    }
}

/// All fully parenthesized words over `x₁ … x_generators` with exactly
/// `degree` leaves and each internal node `*` or `.`.
pub fn words(degree: usize, generators: usize) -> Vec<Term> {
    if degree == 1 {
        return (1..=generators).map(g).collect();
    }
    let mut out = Vec::new();
    for left in 1..degree {
        let ls = words(left, generators);
        let rs = words(degree - left, generators);
        for l in &ls {
            for r in &rs {
                out.push(star(l.clone(), r.clone()));
                out.push(bullet(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Equalities in the free algebra on `x₁, x₂, x₃` that the associativity
/// proof for `A ⊗ B` matches term by term; each entry lists terms that must
/// coincide.
pub fn matching_identities() -> Vec<(&'static str, Vec<Term>)> {
    let (a1, a2, a3) = (g(1), g(2), g(3));
    vec![
        (
            "a1*(a2*a3) = a1*(a3*a2) = (a1*a2)*a3 = a1*(a2.a3)",
            vec![
                star(a1.clone(), star(a2.clone(), a3.clone())),
                star(a1.clone(), star(a3.clone(), a2.clone())),
                star(star(a1.clone(), a2.clone()), a3.clone()),
                star(a1.clone(), bullet(a2.clone(), a3.clone())),
            ],
        ),
        (
            "a3*(a2*a1) = a3*(a1*a2) = (a3*a2)*a1 = a3*(a1.a2)",
            vec![
                star(a3.clone(), star(a2.clone(), a1.clone())),
                star(a3.clone(), star(a1.clone(), a2.clone())),
                star(star(a3.clone(), a2.clone()), a1.clone()),
                star(a3.clone(), bullet(a1.clone(), a2.clone())),
            ],
        ),
        (
            "(a1*a2).a3 = a1.(a3*a2)",
            vec![
                bullet(star(a1.clone(), a2.clone()), a3.clone()),
                bullet(a1.clone(), star(a3.clone(), a2.clone())),
            ],
        ),
        (
            "(a2*a1)*a3 = (a2*a3)*a1",
            vec![
                star(star(a2.clone(), a1.clone()), a3.clone()),
                star(star(a2.clone(), a3.clone()), a1.clone()),
            ],
        ),
        (
            "(a2*a1)*a3 = (a2*a3)*a1 = a2*(a3.a1)",
            vec![
                star(star(a2.clone(), a1.clone()), a3.clone()),
                star(star(a2.clone(), a3.clone()), a1.clone()),
                star(a2.clone(), bullet(a3.clone(), a1.clone())),
            ],
        ),
        (
            "(a1.a2)*a3 = a1.(a2*a3)",
            vec![
                star(bullet(a1.clone(), a2.clone()), a3.clone()),
                bullet(a1.clone(), star(a2.clone(), a3.clone())),
            ],
        ),
        (
            "(a1.a2).a3 = a1.(a2.a3)",
            vec![
                bullet(bullet(a1.clone(), a2.clone()), a3.clone()),
                bullet(a1.clone(), bullet(a2.clone(), a3.clone())),
            ],
        ),
        (
            "a2*(a1*a3) = a2*(a3*a1) = (a2*a1)*a3",
            vec![
                star(a2.clone(), star(a1.clone(), a3.clone())),
                star(a2.clone(), star(a3.clone(), a1.clone())),
                star(star(a2.clone(), a1.clone()), a3.clone()),
            ],
        ),
        (
            "(a2.a3)*a1 = (a2*a1).a3",
            vec![
                star(bullet(a2.clone(), a3.clone()), a1.clone()),
                bullet(star(a2.clone(), a1.clone()), a3.clone()),
            ],
        ),
    ]
}
