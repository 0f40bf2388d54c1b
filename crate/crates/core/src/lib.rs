pub mod diagnostics;
pub mod lexicon;
pub mod parser;
pub mod discourse;
pub mod paraphrase;
pub mod logic;
pub mod translator;
pub mod engine;
pub mod executor;
pub mod session;
pub mod shell;
