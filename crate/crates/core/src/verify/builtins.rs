//! The built-in cross-sections and the four normalizing transducers.

use crate::lang::{Gsm, Guard, Nfa, OneCounterMachine};
use crate::monoid::{GeneratorA13, GeneratorA7};
use crate::sym::Sym;

fn a13(g: GeneratorA13) -> Sym {
    g.sym()
}

/// The regular cross-section of `F[T] × ℤ` over the thirteen generators:
///
/// ```text
/// e a* b1* c1*  ∪ e a* b1* c'-1*  ∪ e a* b'-1* c1*  ∪ e a* b'-1* c'-1*
///   ∪ f d1* ∪ f d-1*  ∪ {a, b0, b'0, c0, c'0}* d1*  ∪ {a, b0, b'0, c0, c'0}* d-1*
/// ```
///
/// As a deterministic automaton in which every state is accepting.
pub fn l_prop31() -> Nfa {
    use GeneratorA13::*;
    let mut n = Nfa::new(GeneratorA13::ALL.iter().map(|g| g.sym()));
    let names = ["I", "P", "D+", "D-", "E", "B+", "B-", "C+", "C-", "F", "F+", "F-"];
    let ids: Vec<usize> = names.iter().map(|s| n.add_state(*s)).collect();
    let st = |name: &str| ids[names.iter().position(|s| *s == name).unwrap()];
    for &s in &ids {
        n.set_accepting(s, true);
    }
    n.set_initial(st("I"));
    for from in ["I", "P"] {
        for g in [A, B0, BPrime0, C0, CPrime0] {
            n.add_transition(st(from), a13(g), st("P"));
        }
    }
    for from in ["I", "P", "D+"] {
        n.add_transition(st(from), a13(D1), st("D+"));
    }
    for from in ["I", "P", "D-"] {
        n.add_transition(st(from), a13(DMinus1), st("D-"));
    }
    n.add_transition(st("I"), a13(E), st("E"));
    n.add_transition(st("E"), a13(A), st("E"));
    for from in ["E", "B+"] {
        n.add_transition(st(from), a13(B1), st("B+"));
    }
    for from in ["E", "B-"] {
        n.add_transition(st(from), a13(BPrimeMinus1), st("B-"));
    }
    for from in ["E", "B+", "B-", "C+"] {
        n.add_transition(st(from), a13(C1), st("C+"));
    }
    for from in ["E", "B+", "B-", "C-"] {
        n.add_transition(st(from), a13(CPrimeMinus1), st("C-"));
    }
    n.add_transition(st("I"), a13(F), st("F"));
    for from in ["F", "F+"] {
        n.add_transition(st(from), a13(D1), st("F+"));
    }
    for from in ["F", "F-"] {
        n.add_transition(st(from), a13(DMinus1), st("F-"));
    }
    n
}

fn a7(g: GeneratorA7) -> Sym {
    g.sym()
}

fn a7_all() -> Vec<Sym> {
    GeneratorA7::ALL.iter().map(|g| g.sym()).collect()
}

fn free_letters() -> Vec<Sym> {
    GeneratorA7::ALL
        .iter()
        .filter(|g| g.is_free())
        .map(|g| g.sym())
        .collect()
}

/// The one-counter cross-section of `F[T]` over `{x, y, y', z, z', p00, Omega}`:
///
/// ```text
/// {x, y, y', z, z'}*  ∪  p00 x* {yⁿzⁿ, y'ⁿz'ⁿ : n ≥ 0}  ∪  {Omega}
/// ```
///
/// After the first `y` the counter holds the number of further `y`s; the
/// `z` block counts it down and may stop only on a zero test.
pub fn l_prop35() -> OneCounterMachine {
    use GeneratorA7::*;
    let mut m = OneCounterMachine::new(a7_all(), "start", false);
    let free = m.add_state("free");
    let xs = m.add_state("x");
    let om = m.add_state("omega");
    for s in [0, free, xs, om] {
        m.set_accepting(s, true);
    }
    for &l in &free_letters() {
        m.add_transition(0, l, Guard::Any, 0, free).unwrap();
        m.add_transition(free, l, Guard::Any, 0, free).unwrap();
    }
    m.add_transition(0, a7(P00), Guard::Any, 0, xs).unwrap();
    m.add_transition(0, a7(Omega), Guard::Any, 0, om).unwrap();
    m.add_transition(xs, a7(X), Guard::Any, 0, xs).unwrap();
    for (y, z, tag) in [(Y, Z, ""), (YPrime, ZPrime, "'")] {
        let ys = m.add_state(format!("y{tag}"));
        let zs = m.add_state(format!("z{tag}"));
        let done = m.add_state(format!("done{tag}"));
        m.set_accepting(done, true);
        m.add_transition(xs, a7(y), Guard::Any, 0, ys).unwrap();
        m.add_transition(ys, a7(y), Guard::Any, 1, ys).unwrap();
        for from in [ys, zs] {
            m.add_transition(from, a7(z), Guard::Zero, 0, done).unwrap();
            m.add_transition(from, a7(z), Guard::Positive, -1, zs).unwrap();
        }
    }
    m
}

fn a7_gsm(initial: &str) -> Gsm {
    Gsm::new(a7_all(), a7_all(), initial)
}

/// Keeps the suffix starting at the last `p00`, provided it is followed only
/// by free letters; every other input has no output.
pub fn gsm_suffix() -> Gsm {
    let mut g = a7_gsm("skip");
    let out = g.add_state("copy");
    g.set_accepting(out, true);
    for s in a7_all() {
        g.add_transition(0, s, &[], 0);
    }
    g.add_transition(0, a7(GeneratorA7::P00), &[a7(GeneratorA7::P00)], out);
    for l in free_letters() {
        g.add_transition(out, l, &[l], out);
    }
    g
}

fn ys() -> [Sym; 2] {
    [a7(GeneratorA7::Y), a7(GeneratorA7::YPrime)]
}

fn zs() -> [Sym; 2] {
    [a7(GeneratorA7::Z), a7(GeneratorA7::ZPrime)]
}

fn yzs() -> [Sym; 4] {
    let [y, y2] = ys();
    let [z, z2] = zs();
    [y, y2, z, z2]
}

/// On `p00 v`, deletes every block of `{y, y', z, z'}` that is followed by an
/// `x`.
pub fn gsm_del_before_x() -> Gsm {
    let x = a7(GeneratorA7::X);
    let mut g = a7_gsm("start");
    let after_x = g.add_state("after-x");
    let deleting = g.add_state("deleting");
    let tail = g.add_state("tail");
    g.set_accepting(after_x, true);
    g.set_accepting(tail, true);
    g.add_transition(0, a7(GeneratorA7::P00), &[a7(GeneratorA7::P00)], after_x);
    g.add_transition(after_x, x, &[x], after_x);
    g.add_transition(deleting, x, &[x], after_x);
    for w in yzs() {
        g.add_transition(after_x, w, &[], deleting);
        g.add_transition(deleting, w, &[], deleting);
        g.add_transition(after_x, w, &[w], tail);
        g.add_transition(tail, w, &[w], tail);
    }
    g
}

/// On `p00 x* {y, y', z, z'}*`, deletes every block of `{z, z'}` lying
/// between two letters of `{y, y'}`.
pub fn gsm_del_z_between_y() -> Gsm {
    let x = a7(GeneratorA7::X);
    let mut g = a7_gsm("start");
    let xs = g.add_state("x");
    let z0 = g.add_state("z-lead");
    let y = g.add_state("y");
    let d = g.add_state("deleting");
    let t = g.add_state("z-tail");
    for s in [xs, z0, y, t] {
        g.set_accepting(s, true);
    }
    g.add_transition(0, a7(GeneratorA7::P00), &[a7(GeneratorA7::P00)], xs);
    g.add_transition(xs, x, &[x], xs);
    for z in zs() {
        g.add_transition(xs, z, &[z], z0);
        g.add_transition(z0, z, &[z], z0);
        g.add_transition(y, z, &[], d);
        g.add_transition(d, z, &[], d);
        g.add_transition(y, z, &[z], t);
        g.add_transition(t, z, &[z], t);
    }
    for b in ys() {
        for from in [xs, z0, y, d] {
            g.add_transition(from, b, &[b], y);
        }
    }
    g
}

/// On `p00 x* {z, z'}* {y, y'}* {z, z'}*`, deletes the block of `{z, z'}`
/// between the `x` block and a following letter of `{y, y'}`.
pub fn gsm_del_z_before_y() -> Gsm {
    let x = a7(GeneratorA7::X);
    let mut g = a7_gsm("start");
    let xs = g.add_state("x");
    let d = g.add_state("deleting");
    let t0 = g.add_state("z-only");
    let y = g.add_state("y");
    let t = g.add_state("z-tail");
    for s in [xs, t0, y, t] {
        g.set_accepting(s, true);
    }
    g.add_transition(0, a7(GeneratorA7::P00), &[a7(GeneratorA7::P00)], xs);
    g.add_transition(xs, x, &[x], xs);
    for z in zs() {
        g.add_transition(xs, z, &[], d);
        g.add_transition(d, z, &[], d);
        g.add_transition(xs, z, &[z], t0);
        g.add_transition(t0, z, &[z], t0);
        g.add_transition(y, z, &[z], t);
        g.add_transition(t, z, &[z], t);
    }
    for b in ys() {
        for from in [xs, d, y] {
            g.add_transition(from, b, &[b], y);
        }
    }
    g
}

/// The four transducers in pipeline order.
pub fn build_proof_gsms() -> [Gsm; 4] {
    [
        gsm_suffix(),
        gsm_del_before_x(),
        gsm_del_z_between_y(),
        gsm_del_z_before_y(),
    ]
}
