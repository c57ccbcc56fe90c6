//! Tokenizer used only for free text given to the annotator.
//!
//! A word is a run of alphanumeric characters, optionally joined by single
//! internal apostrophes or hyphens ("don't", "set-up"). Any other
//! non-whitespace character is a token of its own. A sentence ends after
//! `.`, `!` or `?`, at a blank line, or at the end of the text.

pub fn sentences(text: &str) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    let mut current: Vec<String> = Vec::new();
    let mut word = String::new();
    let mut newlines = 0;
    let chars: Vec<char> = text.chars().collect();

    let flush_word = |word: &mut String, current: &mut Vec<String>| {
        if !word.is_empty() {
            current.push(std::mem::take(word));
        }
    };

    for (i, &ch) in chars.iter().enumerate() {
        if ch.is_alphanumeric() {
            word.push(ch);
            newlines = 0;
            continue;
        }
        let joins = (ch == '\'' || ch == '-' || ch == '’')
            && !word.is_empty()
            && chars.get(i + 1).is_some_and(|c| c.is_alphanumeric());
        if joins {
            word.push(ch);
            continue;
        }
        flush_word(&mut word, &mut current);
        if ch.is_whitespace() {
            if ch == '\n' {
                newlines += 1;
                if newlines >= 2 && !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            }
            continue;
        }
        newlines = 0;
        current.push(ch.to_string());
        if matches!(ch, '.' | '!' | '?') {
            out.push(std::mem::take(&mut current));
        }
    }
    flush_word(&mut word, &mut current);
    if !current.is_empty() {
        out.push(current);
    }
    out
}
