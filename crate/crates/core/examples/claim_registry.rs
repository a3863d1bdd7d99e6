//! Run claims by id, the way `illum verify-paper` does.

use illumination::scenarios::{claim_ids, run_claim, ClaimParams};

fn main() -> illumination::Result<()> {
    println!("known claims: {}", claim_ids().join(", "));
    for (id, n, seed) in [("thmD", 4, 3), ("thmE", 4, 3), ("claimF", 3, 1), ("thm41", 3, 2), ("lemma4.3", 0, 0)] {
        let params = ClaimParams {
            n: (n > 0).then_some(n),
            seed: Some(seed),
            ..Default::default()
        };
        let run = run_claim(id, &params)?;
        let valid = match &run.body {
            Some(b) => run.result.validate(b)?,
            None => true,
        };
        println!("{id:<9} {:?}  params {}  certificates re-check: {valid}", run.result.verdict, run.parameters);
    }
    Ok(())
}
