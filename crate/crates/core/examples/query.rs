//! Asking questions; wh-questions yield their answers one at a time.

use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::session::Session;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = Session::new(Lexicon::parse(SIMPLEMAT_LEXICON)?);
    s.add("The customer enters a card and a numeric personal code.")?;
    s.add("If it is not valid then SM rejects the card.")?;
    s.add("John owns a card.")?;

    for q in ["Does the customer enter a card?", "Does SM reject the card?", "Who enters a card?", "Who owns a card?"] {
        println!("{q}");
        for a in s.ask(q)? {
            println!("  {a}");
        }
    }

    let mut answers = s.ask("What does the customer enter?")?;
    println!("first page: {:?}", answers.next().map(|a| a.to_string()));
    println!("next page:  {:?}", answers.next().map(|a| a.to_string()));
    println!("exhausted:  {}", answers.next().is_none());
    Ok(())
}
