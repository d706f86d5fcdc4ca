//! Synthetic Java-like sources for benchmarking the pipeline hot paths.

/// Deterministic xorshift-style generator, good enough to vary identifiers.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

const WORDS: [&str; 12] = [
    "count", "total", "index", "buffer", "cursor", "offset", "length", "status", "widget",
    "handle", "margin", "weight",
];

/// Generates roughly `target_bytes` of plausible Java source: a class with
/// fields and methods whose identifiers vary with the seed.
pub fn synthetic_java(seed: u64, target_bytes: usize) -> String {
    let mut rng = Lcg::new(seed);
    let mut out = String::with_capacity(target_bytes + 256);
    out.push_str(&format!("public class Gen{seed} {{\n"));
    let mut member = 0usize;
    while out.len() < target_bytes {
        let a = WORDS[rng.below(WORDS.len())];
        let b = WORDS[rng.below(WORDS.len())];
        member += 1;
        out.push_str(&format!("    private int {a}{member};\n"));
        out.push_str(&format!(
            "    public int get{member}(int {b}) {{\n        int local{member} = {b} + {a}{member};\n        for (int i = 0; i < local{member}; i++) {{\n            {a}{member} = {a}{member} + i; // accumulate\n        }}\n        return local{member};\n    }}\n"
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_source_lexes_and_classifies() {
        let source = synthetic_java(7, 8_000);
        assert!(source.len() >= 8_000);
        let table = scap_core::java::identifiers::classify_identifiers(source.as_bytes()).unwrap();
        assert!(table.names.len() > 10);
        assert!(table.warnings.is_empty());
    }
}
