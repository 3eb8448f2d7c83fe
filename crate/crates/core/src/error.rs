use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the public
/// operations; most carry enough context to point at the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation contains a cycle")]
    Cycle,
    #[error("cover ({0}, {1}) is implied by a longer chain and must be dropped")]
    NotIrreducible(usize, usize),
    #[error("element {index} out of range for a poset with {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("posets larger than {max} elements are not supported (got {n})")]
    TooLarge { n: usize, max: usize },
    #[error("poset admits no order-reversing involution")]
    NotSelfDual,
    #[error("map is not an order-reversing involution: {0}")]
    InvalidInvolution(String),
    #[error("subset is not an order ideal")]
    NotAnIdeal,
    #[error("operation requires a fence poset")]
    NotAFence,
    #[error("operation requires the four-element zig-zag poset")]
    WrongPoset,
    #[error("label {label} for element {element} lies outside 1..={q}")]
    LabelOutOfRange { element: usize, label: u32, q: u32 },
    #[error("cover {a} < {b} violated: labels[{a}] = {la} is not below labels[{b}] = {lb}")]
    CoverViolated { a: usize, b: usize, la: u32, lb: u32 },
    #[error("content word supplies {got} labels but {expected} are required")]
    ArityMismatch { expected: usize, got: usize },
    #[error("labeling is not packed")]
    NotPacked,
    #[error("statistic is not defined on this kind of state")]
    TypeMismatch,
    #[error("average over an empty state set is undefined")]
    EmptySet,
    #[error("orbit walk exceeded {cap} steps without returning to the start")]
    NonReturn { cap: u64 },
    #[error("action leaves the supplied state set")]
    Closure,
    #[error("action is not homomesic for the statistic")]
    NotHomomesic,
    #[error("content word has rotational symmetry; symmetric-branch sum is {symmetric_sum}")]
    Symmetry { symmetric_sum: i64 },
    #[error("internal consistency check failed: {0}")]
    Counterexample(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
