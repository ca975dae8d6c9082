//! Turing machines, letter-to-letter transducers and the binary arithmetic
//! that prepares a machine's input from a square's size and offset.

mod arith;
pub mod corpus;
mod format;
mod tm;
mod transducer;

pub use arith::{encode_pair, reduce_binary_pair, scale_for_time};
pub use format::{fingerprint, parse_tm, write_tm, TM_HEADER};
pub use tm::{
    run_tm, validate_trace, Configuration, Move, RunStatus, RunTrace, Transition, TuringMachine, Word,
};
pub use transducer::{
    apply_transducer, identity, increment, increment_iterate, Transducer, TransducerRule,
};
