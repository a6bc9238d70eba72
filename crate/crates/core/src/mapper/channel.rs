/// One routing-channel segment between neighbouring ULBs.
///
/// Each reservation is a hop entering at `start` and leaving `t_move` later.
#[derive(Debug, Clone, Default)]
pub(super) struct Channel {
    starts: Vec<f64>,
}

impl Channel {
    /// Books the earliest hop at or after `t` that keeps fewer than `cap`
    /// qubits overlapping it. Returns the entry time and, if the qubit had
    /// to wait, its position in the line of waiting qubits.
    ///
    /// Reservations that ended by `now` are dropped; callers never request
    /// a hop before `now`.
    pub(super) fn reserve(&mut self, now: f64, t: f64, t_move: f64, cap: usize) -> (f64, usize) {
        self.starts.retain(|&r| r + t_move > now);
        let overlapping = |s: f64| {
            self.starts
                .iter()
                .filter(|&&r| r < s + t_move && r + t_move > s)
                .count()
        };
        let mut enter = t;
        if overlapping(t) >= cap {
            let mut candidates: Vec<f64> = self
                .starts
                .iter()
                .map(|&r| r + t_move)
                .filter(|&e| e > t)
                .collect();
            candidates.sort_by(f64::total_cmp);
            enter = candidates
                .into_iter()
                .find(|&s| overlapping(s) < cap)
                .expect("the slot after the last reservation is free");
        }
        let waiting = if enter > t {
            let pending = self.starts.iter().filter(|&&r| r + t_move > t).count();
            pending + 1 - cap.min(pending)
        } else {
            0
        };
        self.starts.push(enter);
        (enter, waiting)
    }
}
