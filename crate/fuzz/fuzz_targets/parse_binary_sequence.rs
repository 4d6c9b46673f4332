#![no_main]

use libfuzzer_sys::fuzz_target;
use quadseq::BinarySequence;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(seq) = text.parse::<BinarySequence>() {
        // printing and re-parsing is the identity
        let printed = seq.to_string();
        let again: BinarySequence = printed.parse().expect("printed form parses");
        assert_eq!(seq, again);
        assert!(seq.weight() <= seq.period());
    }
});
