//! Proof search and countermodel search on separate threads.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::thread;

use mfd_core::entail::{
    decide_non_contracting, BfsReport, BfsSearch, BfsState, CountermodelReport, CountermodelSearch,
    CountermodelState, UnknownReport,
};
use mfd_core::{Budgets, Mfd, Refutation, Theory, Verdict};

enum Message {
    Proof(Verdict),
    ProofDone(BfsState, BfsReport),
    Model(Verdict),
    ModelsDone(CountermodelReport),
}

/// Same contract as [`mfd_core::decide`], with both searches running at
/// once. The first certificate found wins and stops the other search.
///
/// When the rewrite graph is exhausted the countermodel search still runs to
/// its end, so a finite witness is preferred exactly as in the sequential
/// procedure.
pub fn decide_concurrent(theory: &Theory, query: &Mfd, budgets: Budgets) -> Verdict {
    if let Some(v) = decide_non_contracting(theory, query) {
        return v;
    }
    let cancel = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel();
    thread::scope(|s| {
        let proof_tx = tx.clone();
        let cancel_ref = &cancel;
        s.spawn(move || {
            let mut bfs = BfsSearch::new(theory, query, budgets.bfs_nodes);
            while bfs.is_running() && !cancel_ref.load(Ordering::Relaxed) {
                bfs.step_layer();
            }
            let msg = match bfs.certificate() {
                Some((path, proof)) => Message::Proof(Verdict::Proved { path, proof }),
                None => Message::ProofDone(bfs.state(), bfs.report()),
            };
            let _ = proof_tx.send(msg);
        });
        s.spawn(move || {
            let mut models = CountermodelSearch::new(theory, query, budgets.max_algebra_size, budgets.model_evaluations);
            while models.is_running() && !cancel_ref.load(Ordering::Relaxed) {
                models.step_algebra();
            }
            let msg = match models.state() {
                CountermodelState::Found(c) => Message::Model(Verdict::Refuted(Refutation::Countermodel(c.clone()))),
                _ => Message::ModelsDone(models.report()),
            };
            let _ = tx.send(msg);
        });

        let mut proof_done = None;
        let mut models_done = None;
        for msg in rx.iter() {
            match msg {
                Message::Proof(v) | Message::Model(v) => {
                    cancel.store(true, Ordering::Relaxed);
                    return v;
                }
                Message::ProofDone(state, report) => proof_done = Some((state, report)),
                Message::ModelsDone(report) => models_done = Some(report),
            }
            if let (Some((state, bfs)), Some(models)) = (proof_done, models_done) {
                return if state == BfsState::Exhausted {
                    Verdict::Refuted(Refutation::RewritingExhausted(bfs))
                } else {
                    Verdict::Unknown(UnknownReport { bfs, models })
                };
            }
        }
        unreachable!("both searches report before the channel closes")
    })
}
