//! Regular English inflection used by the lexical editor.

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// Rough syllable count: vowel groups, with a silent final `e` discounted.
pub fn syllables(word: &str) -> usize {
    let chars: Vec<char> = word.chars().collect();
    let mut count = 0;
    let mut prev_vowel = false;
    for &c in &chars {
        let v = is_vowel(c) || c == 'y';
        if v && !prev_vowel {
            count += 1;
        }
        prev_vowel = v;
    }
    if count > 1 && word.ends_with('e') && !word.ends_with("le") {
        let before = chars.get(chars.len().wrapping_sub(2)).copied();
        if before.is_some_and(|c| !is_vowel(c)) {
            count -= 1;
        }
    }
    count.max(1)
}

fn ends_with_sibilant(word: &str) -> bool {
    ["s", "x", "z", "ch", "sh"].iter().any(|s| word.ends_with(s))
}

fn consonant_y(word: &str) -> bool {
    let mut it = word.chars().rev();
    it.next() == Some('y') && it.next().is_some_and(|c| !is_vowel(c))
}

/// `card` -> `cards`, `box` -> `boxes`, `party` -> `parties`.
///
/// For compounds only the last word inflects.
pub fn plural(noun: &str) -> String {
    if consonant_y(noun) {
        format!("{}ies", &noun[..noun.len() - 1])
    } else if ends_with_sibilant(noun) {
        format!("{noun}es")
    } else {
        format!("{noun}s")
    }
}

/// Third person singular present: `enter` -> `enters`, `carry` -> `carries`.
pub fn third_singular(verb: &str) -> String {
    if consonant_y(verb) {
        format!("{}ies", &verb[..verb.len() - 1])
    } else if ends_with_sibilant(verb) || verb.ends_with('o') {
        format!("{verb}es")
    } else {
        format!("{verb}s")
    }
}

/// Consonant-vowel-consonant ending whose last consonant doubles (`big`).
fn doubles_final(word: &str) -> bool {
    let c: Vec<char> = word.chars().collect();
    if c.len() < 3 {
        return false;
    }
    let (a, b, z) = (c[c.len() - 3], c[c.len() - 2], c[c.len() - 1]);
    !is_vowel(a) && is_vowel(b) && !is_vowel(z) && !matches!(z, 'w' | 'x' | 'y')
}

fn inflect(adj: &str, suffix: &str) -> String {
    if adj.ends_with('e') {
        format!("{adj}{}", &suffix[1..])
    } else if consonant_y(adj) {
        format!("{}i{suffix}", &adj[..adj.len() - 1])
    } else if doubles_final(adj) {
        let last = adj.chars().last().unwrap_or_default();
        format!("{adj}{last}{suffix}")
    } else {
        format!("{adj}{suffix}")
    }
}

/// Comparative and superlative of a regular adjective.
///
/// One-syllable bases inflect (`big` -> `bigger`, `biggest`); everything else
/// takes the analytic form (`valid` -> `more valid`, `most valid`).
pub fn degrees(adj: &str) -> (String, String) {
    if !adj.contains(' ') && syllables(adj) == 1 {
        (inflect(adj, "er"), inflect(adj, "est"))
    } else {
        (format!("more {adj}"), format!("most {adj}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plurals() {
        assert_eq!(plural("card"), "cards");
        assert_eq!(plural("personal code"), "personal codes");
        assert_eq!(plural("box"), "boxes");
        assert_eq!(plural("party"), "parties");
        assert_eq!(plural("day"), "days");
    }

    #[test]
    fn third_person() {
        assert_eq!(third_singular("enter"), "enters");
        assert_eq!(third_singular("carry"), "carries");
        assert_eq!(third_singular("check"), "checks");
        assert_eq!(third_singular("pass"), "passes");
    }

    #[test]
    fn adjective_degrees() {
        assert_eq!(degrees("valid"), ("more valid".into(), "most valid".into()));
        assert_eq!(degrees("numeric"), ("more numeric".into(), "most numeric".into()));
        assert_eq!(degrees("big"), ("bigger".into(), "biggest".into()));
        assert_eq!(degrees("nice"), ("nicer".into(), "nicest".into()));
        assert_eq!(degrees("long"), ("longer".into(), "longest".into()));
        assert_eq!(degrees("dry"), ("drier".into(), "driest".into()));
    }

    #[test]
    fn syllable_counts() {
        assert_eq!(syllables("valid"), 2);
        assert_eq!(syllables("big"), 1);
        assert_eq!(syllables("nice"), 1);
        assert_eq!(syllables("correct"), 2);
    }
}
