//! Randomized verification of the basic relation-calculus identities.
//!
//! Samples random relation triples (R, S, T) and random permutation graphs
//! over the full universe X x X and checks eleven identities: nine for the
//! boolean-plus-composition signature and two for permutations commuting with
//! complement. The complement operation is injectable so that test suites can
//! demonstrate the harness actually catches a broken implementation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Carrier, CheckFailure, CheckRecord, Rel, Universe, VerificationReport};

/// Operation overrides for the harness; default is the real implementation.
#[derive(Clone, Copy)]
pub struct HarnessOps {
    pub complement: fn(&Rel) -> Rel,
}

impl Default for HarnessOps {
    fn default() -> Self {
        HarnessOps {
            complement: Rel::complement,
        }
    }
}

/// Runs the identity harness with the standard operations.
pub fn verify_relation_identities(carrier_size: usize, trials: u64, seed: u64) -> VerificationReport {
    verify_relation_identities_with(carrier_size, trials, seed, HarnessOps::default())
}

/// Runs the identity harness with injectable operations.
pub fn verify_relation_identities_with(
    carrier_size: usize,
    trials: u64,
    seed: u64,
    ops: HarnessOps,
) -> VerificationReport {
    assert!(carrier_size >= 1, "carrier_size must be at least 1");
    assert!(trials >= 1, "trials must be at least 1");
    let carrier = Carrier::new((0..carrier_size).map(|i| format!("x{i}")));
    let universe = Universe::full(carrier);
    let comp = ops.complement;

    let mut checks = vec![
        CheckRecord::new("(i)", "R⌣⌣ = R"),
        CheckRecord::new("(ii)", "R⌣ᶜ = Rᶜ⌣"),
        CheckRecord::new("(iii)", "(R ∪ S)⌣ = R⌣ ∪ S⌣"),
        CheckRecord::new("(iv)", "(R ∩ S)⌣ = R⌣ ∩ S⌣"),
        CheckRecord::new("(v)", "id ∘ R = R = R ∘ id"),
        CheckRecord::new("(vi)", "(R ∘ S) ∘ T = R ∘ (S ∘ T)"),
        CheckRecord::new("(vii)", "(R ∘ S)⌣ = S⌣ ∘ R⌣"),
        CheckRecord::new("(viii)", "(R ∪ S) ∘ T = (R ∘ T) ∪ (S ∘ T)"),
        CheckRecord::new("(ix)", "R ∘ (S ∪ T) = (R ∘ S) ∪ (R ∘ T)"),
        CheckRecord::new("(x)", "(γ ∘ R)ᶜ = γ ∘ Rᶜ"),
        CheckRecord::new("(xi)", "(R ∘ γ)ᶜ = Rᶜ ∘ γ"),
    ];

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = Rel::identity(&universe);
    for _ in 0..trials {
        let r = Rel::random(&universe, &mut rng);
        let s = Rel::random(&universe, &mut rng);
        let t = Rel::random(&universe, &mut rng);
        let mut perm: Vec<usize> = (0..carrier_size).collect();
        perm.shuffle(&mut rng);
        let gamma = Rel::permutation(&universe, &perm);

        fn verify(rec: &mut CheckRecord, lhs: Rel, rhs: Rel, input: &str) {
            rec.check(lhs == rhs, || {
                CheckFailure::new(input, lhs.to_string(), rhs.to_string())
            });
        }

        let rst = format!("R={r}, S={s}, T={t}");
        let rg = format!("R={r}, γ={gamma}");
        verify(&mut checks[0], r.converse().converse(), r.clone(), &format!("R={r}"));
        verify(&mut checks[1], comp(&r.converse()), comp(&r).converse(), &format!("R={r}"));
        verify(&mut checks[2], r.union(&s).converse(), r.converse().union(&s.converse()), &rst);
        verify(&mut checks[3], r.intersect(&s).converse(), r.converse().intersect(&s.converse()), &rst);
        checks[4].check(id.compose(&r) == r && r.compose(&id) == r, || {
            CheckFailure::new(
                format!("R={r}"),
                r.to_string(),
                format!("id∘R={}, R∘id={}", id.compose(&r), r.compose(&id)),
            )
        });
        verify(&mut checks[5], r.compose(&s).compose(&t), r.compose(&s.compose(&t)), &rst);
        verify(&mut checks[6], r.compose(&s).converse(), s.converse().compose(&r.converse()), &rst);
        verify(&mut checks[7], r.union(&s).compose(&t), r.compose(&t).union(&s.compose(&t)), &rst);
        verify(&mut checks[8], r.compose(&s.union(&t)), r.compose(&s).union(&r.compose(&t)), &rst);
        verify(&mut checks[9], comp(&gamma.compose(&r)), gamma.compose(&comp(&r)), &rg);
        verify(&mut checks[10], comp(&r.compose(&gamma)), comp(&r).compose(&gamma), &rg);
    }

    VerificationReport::new("relation-identities", checks)
}
