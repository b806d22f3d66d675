use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Army {
    A,
    B,
}

/// Result of playing one game to ruin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameOutcome {
    /// The army reduced to zero units.
    pub ruined: Army,
    /// Number of rounds played.
    pub events: u64,
    /// Units left to the survivor.
    pub survivor_units: u64,
}

/// Runs the embedded chain from `(a, b)` until one side is empty, calling
/// `on_event(a, b)` after every round. A wins a round with probability
/// `a / (a + b)` when `proportional`, else with probability 1/2.
pub(crate) fn run_chain<R: Rng + ?Sized>(
    mut a: u64,
    mut b: u64,
    proportional: bool,
    rng: &mut R,
    mut on_event: impl FnMut(u64, u64),
) -> GameOutcome {
    assert!(a + b >= 1, "a game needs at least one unit");
    let mut events = 0;
    while a > 0 && b > 0 {
        let a_wins = if proportional {
            rng.random_range(0..a + b) < a
        } else {
            rng.random::<bool>()
        };
        if a_wins {
            b -= 1;
        } else {
            a -= 1;
        }
        events += 1;
        on_event(a, b);
    }
    let (ruined, survivor_units) = if a == 0 { (Army::A, b) } else { (Army::B, a) };
    GameOutcome {
        ruined,
        events,
        survivor_units,
    }
}

/// Plays the proportional game from `(m, n)`. The frequency of
/// `ruined == Army::A` over replications estimates `p(m, n)`.
pub fn play_discrete<R: Rng + ?Sized>(m: u64, n: u64, rng: &mut R) -> GameOutcome {
    run_chain(m, n, true, rng, |_, _| {})
}

/// Plays the fair-coin game from `(m, n)`; estimates `q(m, n)`.
pub fn play_simple<R: Rng + ?Sized>(m: u64, n: u64, rng: &mut R) -> GameOutcome {
    run_chain(m, n, false, rng, |_, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::replication_rng;

    #[test]
    fn boundary_games() {
        let mut rng = replication_rng(1, 0);
        let o = play_discrete(0, 5, &mut rng);
        assert_eq!(
            o,
            GameOutcome {
                ruined: Army::A,
                events: 0,
                survivor_units: 5
            }
        );
        let o = play_simple(3, 0, &mut rng);
        assert_eq!(o.ruined, Army::B);
        assert_eq!(o.events, 0);
    }

    #[test]
    fn events_conserve_units() {
        let mut rng = replication_rng(2, 0);
        for _ in 0..100 {
            let o = play_discrete(17, 23, &mut rng);
            assert_eq!(o.events, 40 - o.survivor_units);
            assert!(o.survivor_units >= 1);
        }
    }

    #[test]
    fn two_against_one_simple() {
        let mut rng = replication_rng(3, 0);
        let reps = 200_000;
        let hits = (0..reps)
            .filter(|_| play_simple(2, 1, &mut rng).ruined == Army::A)
            .count();
        let freq = hits as f64 / reps as f64;
        // 3 sigma for p = 1/4
        assert!((freq - 0.25).abs() < 3.0 * (0.25f64 * 0.75 / reps as f64).sqrt());
    }
}
