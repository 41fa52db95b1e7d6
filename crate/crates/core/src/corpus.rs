//! Reference programs shipped with the interpreter, used as golden tests.

pub const ARITHMETIC: &str = include_str!("../corpus/arithmetic.n");
pub const AGE: &str = include_str!("../corpus/age.n");
/// The guessing game with its missing block terminators restored.
pub const GUESS: &str = include_str!("../corpus/guess.n");
pub const HELLO: &str = include_str!("../corpus/hello.n");
pub const SQUARE: &str = include_str!("../corpus/square.n");
pub const SQUARE_LOOP: &str = include_str!("../corpus/square_loop.n");
pub const FACTORIAL: &str = include_str!("../corpus/factorial.n");
pub const YIN_YANG: &str = include_str!("../corpus/yinyang.n");

pub const ALL: [(&str, &str); 8] = [
    ("arithmetic.n", ARITHMETIC),
    ("age.n", AGE),
    ("guess.n", GUESS),
    ("hello.n", HELLO),
    ("square.n", SQUARE),
    ("square_loop.n", SQUARE_LOOP),
    ("factorial.n", FACTORIAL),
    ("yinyang.n", YIN_YANG),
];
