//! Translating a specification into clauses. Sentences that have no clause
//! form are reported and their predicates become opaque to queries.

use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::session::Session;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new(Lexicon::parse(SIMPLEMAT_LEXICON)?);
    for text in [
        "The customer enters a card and a numeric personal code.",
        "If it is not valid then SM rejects the card.",
        "If a customer enters a valid card then SM accepts the card.",
        "No customer carries money.",
        "The clerk gives a receipt to the customer or SM waits.",
    ] {
        let accepted = s.add(text)?;
        for w in &accepted.warnings {
            println!("{}", w.diagnostic());
        }
    }
    print!("{}", s.clauses_text());
    Ok(())
}
