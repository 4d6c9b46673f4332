#![no_main]

use libfuzzer_sys::fuzz_target;
use quadseq::correlate::quaternary_autocorr;
use quadseq::QuaternarySequence;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(seq) = text.parse::<QuaternarySequence>() {
        let printed = seq.to_string();
        let again: QuaternarySequence = printed.parse().expect("printed form parses");
        assert_eq!(seq, again);
        // drive the main consumer on small inputs: R(n - tau) = conj(R(tau))
        let n = seq.period();
        if n <= 256 {
            for tau in 1..n {
                assert_eq!(quaternary_autocorr(&seq, n - tau), quaternary_autocorr(&seq, tau).conj());
            }
        }
    }
});
