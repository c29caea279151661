//! Porter stemmer for English.
//!
//! Faithful port of the reference implementation of the classic algorithm,
//! including its three documented departures from the original 1980
//! description: words of length one or two are left alone, step 2 maps
//! `bli -> ble` rather than `abli -> able`, and step 2 gains the rule
//! `logi -> log`. Conformance is pinned by a ~23k-word vocabulary fixture
//! in the test suite.

/// Stem a lowercase alphabetic token. Non-ASCII tokens are returned
/// unchanged (the analysis chain never produces them).
pub fn porter_stem(token: &str) -> String {
    if token.len() <= 2 || !token.is_ascii() {
        return token.to_string();
    }
    let mut s = Stemmer {
        b: token.as_bytes().to_vec(),
        k: token.len(),
        j: 0,
    };
    s.step1ab();
    s.step1c();
    s.step2();
    s.step3();
    s.step4();
    s.step5();
    // Input was ASCII and steps only splice ASCII, so this cannot fail.
    String::from_utf8(s.b[..s.k].to_vec()).expect("stemmer output is ASCII")
}

/// Working state: `b[..k]` is the current word, `j` is the stem length set
/// by the most recent successful suffix match.
struct Stemmer {
    b: Vec<u8>,
    k: usize,
    j: usize,
}

impl Stemmer {
    /// True if `b[i]` is a consonant. `y` is a consonant at the start of
    /// the word or after a vowel, otherwise it acts as a vowel.
    fn is_consonant(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => {
                if i == 0 {
                    true
                } else {
                    !self.is_consonant(i - 1)
                }
            }
            _ => true,
        }
    }

    /// Number of consonant-vowel-consonant sequences ("measure") in
    /// `b[..self.j]`.
    fn measure(&self) -> usize {
        let j = self.j;
        let mut n = 0;
        let mut i = 0;
        loop {
            if i >= j {
                return n;
            }
            if !self.is_consonant(i) {
                break;
            }
            i += 1;
        }
        i += 1;
        loop {
            loop {
                if i >= j {
                    return n;
                }
                if self.is_consonant(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
            n += 1;
            loop {
                if i >= j {
                    return n;
                }
                if !self.is_consonant(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
        }
    }

    fn vowel_in_stem(&self) -> bool {
        (0..self.j).any(|i| !self.is_consonant(i))
    }

    /// True if `b[pos]` and `b[pos - 1]` are the same consonant.
    fn double_consonant_at(&self, pos: usize) -> bool {
        pos >= 1 && self.b[pos] == self.b[pos - 1] && self.is_consonant(pos)
    }

    /// consonant-vowel-consonant ending at `pos`, where the final consonant
    /// is not `w`, `x` or `y`. Signals a short stem like "fil" or "hop"
    /// that wants a restored trailing `e`.
    fn cvc_at(&self, pos: usize) -> bool {
        if pos < 2 || !self.is_consonant(pos) || self.is_consonant(pos - 1) || !self.is_consonant(pos - 2)
        {
            return false;
        }
        !matches!(self.b[pos], b'w' | b'x' | b'y')
    }

    /// If the current word ends with `suffix`, record the stem length in
    /// `self.j` and return true.
    fn ends(&mut self, suffix: &[u8]) -> bool {
        if self.b[..self.k].ends_with(suffix) {
            self.j = self.k - suffix.len();
            true
        } else {
            false
        }
    }

    /// Replace the matched suffix (everything from `j`) with `s`.
    fn set_to(&mut self, s: &[u8]) {
        self.b.truncate(self.j);
        self.b.extend_from_slice(s);
        self.k = self.j + s.len();
    }

    /// `set_to` guarded by measure > 0 on the stem.
    fn replace_if_measure(&mut self, s: &[u8]) {
        if self.measure() > 0 {
            self.set_to(s);
        }
    }

    /// Plurals and -ed / -ing endings.
    fn step1ab(&mut self) {
        if self.b[self.k - 1] == b's' {
            if self.ends(b"sses") {
                self.k -= 2;
            } else if self.ends(b"ies") {
                self.set_to(b"i");
            } else if self.b[self.k - 2] != b's' {
                self.k -= 1;
            }
        }
        if self.ends(b"eed") {
            if self.measure() > 0 {
                self.k -= 1;
            }
        } else if (self.ends(b"ed") || self.ends(b"ing")) && self.vowel_in_stem() {
            self.k = self.j;
            if self.ends(b"at") {
                self.set_to(b"ate");
            } else if self.ends(b"bl") {
                self.set_to(b"ble");
            } else if self.ends(b"iz") {
                self.set_to(b"ize");
            } else if self.double_consonant_at(self.k - 1) {
                if !matches!(self.b[self.k - 1], b'l' | b's' | b'z') {
                    self.k -= 1;
                }
            } else if self.measure() == 1 && self.cvc_at(self.k - 1) {
                self.set_to(b"e");
            }
        }
    }

    /// Turn a terminal `y` into `i` when there is a vowel in the stem.
    fn step1c(&mut self) {
        if self.ends(b"y") && self.vowel_in_stem() {
            self.b[self.k - 1] = b'i';
        }
    }

    /// Map double suffices to single ones, e.g. -ization -> -ize.
    fn step2(&mut self) {
        if self.k < 2 {
            return;
        }
        let rules: &[(&[u8], &[u8])] = match self.b[self.k - 2] {
            b'a' => &[(b"ational", b"ate"), (b"tional", b"tion")],
            b'c' => &[(b"enci", b"ence"), (b"anci", b"ance")],
            b'e' => &[(b"izer", b"ize")],
            b'l' => &[
                (b"bli", b"ble"),
                (b"alli", b"al"),
                (b"entli", b"ent"),
                (b"eli", b"e"),
                (b"ousli", b"ous"),
            ],
            b'o' => &[(b"ization", b"ize"), (b"ation", b"ate"), (b"ator", b"ate")],
            b's' => &[
                (b"alism", b"al"),
                (b"iveness", b"ive"),
                (b"fulness", b"ful"),
                (b"ousness", b"ous"),
            ],
            b't' => &[(b"aliti", b"al"), (b"iviti", b"ive"), (b"biliti", b"ble")],
            b'g' => &[(b"logi", b"log")],
            _ => return,
        };
        for (suffix, replacement) in rules {
            if self.ends(suffix) {
                self.replace_if_measure(replacement);
                return;
            }
        }
    }

    /// -icate, -ful, -ness and friends.
    fn step3(&mut self) {
        if self.k < 1 {
            return;
        }
        let rules: &[(&[u8], &[u8])] = match self.b[self.k - 1] {
            b'e' => &[(b"icate", b"ic"), (b"ative", b""), (b"alize", b"al")],
            b'i' => &[(b"iciti", b"ic")],
            b'l' => &[(b"ical", b"ic"), (b"ful", b"")],
            b's' => &[(b"ness", b"")],
            _ => return,
        };
        for (suffix, replacement) in rules {
            if self.ends(suffix) {
                self.replace_if_measure(replacement);
                return;
            }
        }
    }

    /// Drop -ant, -ence and similar endings when the measure allows.
    fn step4(&mut self) {
        if self.k < 2 {
            return;
        }
        let matched = match self.b[self.k - 2] {
            b'a' => self.ends(b"al"),
            b'c' => self.ends(b"ance") || self.ends(b"ence"),
            b'e' => self.ends(b"er"),
            b'i' => self.ends(b"ic"),
            b'l' => self.ends(b"able") || self.ends(b"ible"),
            b'n' => {
                self.ends(b"ant") || self.ends(b"ement") || self.ends(b"ment") || self.ends(b"ent")
            }
            b'o' => {
                (self.ends(b"ion")
                    && self.j >= 1
                    && matches!(self.b[self.j - 1], b's' | b't'))
                    || self.ends(b"ou")
            }
            b's' => self.ends(b"ism"),
            b't' => self.ends(b"ate") || self.ends(b"iti"),
            b'u' => self.ends(b"ous"),
            b'v' => self.ends(b"ive"),
            b'z' => self.ends(b"ize"),
            _ => return,
        };
        if matched && self.measure() > 1 {
            self.k = self.j;
        }
    }

    /// Remove a final `e` and reduce a final `ll` in long words.
    fn step5(&mut self) {
        self.j = self.k;
        if self.b[self.k - 1] == b'e' {
            let a = self.measure();
            if a > 1 || (a == 1 && !(self.k >= 2 && self.cvc_at(self.k - 2))) {
                self.k -= 1;
            }
        }
        if self.k >= 2
            && self.b[self.k - 1] == b'l'
            && self.double_consonant_at(self.k - 1)
            && self.measure() > 1
        {
            self.k -= 1;
        }
    }
}
