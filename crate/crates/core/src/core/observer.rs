//! Observer-pattern notification hub.
//!
//! Algorithms (and time sources) own an [`Observable`] and publish an [`Event`] after each
//! iteration. Observers are invoked once per notification, in registration order. A failing
//! or panicking observer is logged and skipped; it never aborts the run.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;
use std::time::Duration;

use super::solution::FloatSolution;
use crate::error::{Error, Result};

pub const EVALUATIONS: &str = "EVALUATIONS";
pub const SOLUTIONS: &str = "SOLUTIONS";
pub const COUNTER: &str = "COUNTER";
pub const PROBLEM: &str = "PROBLEM";
pub const COMPUTING_TIME: &str = "COMPUTING_TIME";
pub const EPOCH: &str = "EPOCH";

/// Payload delivered to observers. Each field corresponds to one of the documented keys;
/// absent keys are `None`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Event<'a> {
    pub evaluations: Option<u64>,
    pub solutions: Option<&'a [FloatSolution]>,
    pub counter: Option<u64>,
    pub problem: Option<&'a str>,
    pub computing_time: Option<Duration>,
    /// Set on the notification emitted at the end of a dynamic-algorithm epoch.
    pub epoch: Option<usize>,
}

impl<'a> Event<'a> {
    pub fn progress(evaluations: u64, solutions: &'a [FloatSolution]) -> Self {
        Event {
            evaluations: Some(evaluations),
            solutions: Some(solutions),
            ..Event::default()
        }
    }

    pub fn counter(counter: u64) -> Self {
        Event {
            counter: Some(counter),
            ..Event::default()
        }
    }

    pub fn require_evaluations(&self) -> Result<u64> {
        self.evaluations.ok_or_else(|| missing(EVALUATIONS))
    }

    pub fn require_solutions(&self) -> Result<&'a [FloatSolution]> {
        self.solutions.ok_or_else(|| missing(SOLUTIONS))
    }

    pub fn require_counter(&self) -> Result<u64> {
        self.counter.ok_or_else(|| missing(COUNTER))
    }

    pub fn require_computing_time(&self) -> Result<Duration> {
        self.computing_time.ok_or_else(|| missing(COMPUTING_TIME))
    }

    /// Names of the keys present in this payload.
    pub fn keys(&self) -> Vec<&'static str> {
        let mut keys = Vec::new();
        if self.evaluations.is_some() {
            keys.push(EVALUATIONS);
        }
        if self.solutions.is_some() {
            keys.push(SOLUTIONS);
        }
        if self.counter.is_some() {
            keys.push(COUNTER);
        }
        if self.problem.is_some() {
            keys.push(PROBLEM);
        }
        if self.computing_time.is_some() {
            keys.push(COMPUTING_TIME);
        }
        if self.epoch.is_some() {
            keys.push(EPOCH);
        }
        keys
    }
}

fn missing(key: &str) -> Error {
    Error::Config(format!("event payload has no `{key}` entry"))
}

/// Error type observers may return; it is logged and otherwise ignored.
pub type ObserverError = Box<dyn std::error::Error + Send + Sync>;

pub trait Observer: Send + Sync {
    fn update(&self, event: &Event<'_>) -> Result<(), ObserverError>;
}

impl<F> Observer for F
where
    F: Fn(&Event<'_>) + Send + Sync,
{
    fn update(&self, event: &Event<'_>) -> Result<(), ObserverError> {
        self(event);
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObserverId(u64);

#[derive(Default)]
pub struct Observable {
    observers: Vec<(ObserverId, Arc<dyn Observer>)>,
    next_id: u64,
}

impl std::fmt::Debug for Observable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Observable")
            .field("observers", &self.observers.len())
            .finish()
    }
}

impl Observable {
    pub fn new() -> Self {
        Observable::default()
    }

    pub fn register(&mut self, observer: Arc<dyn Observer>) -> ObserverId {
        let id = ObserverId(self.next_id);
        self.next_id += 1;
        self.observers.push((id, observer));
        id
    }

    /// Returns `true` if the observer was registered.
    pub fn deregister(&mut self, id: ObserverId) -> bool {
        let before = self.observers.len();
        self.observers.retain(|(oid, _)| *oid != id);
        before != self.observers.len()
    }

    pub fn deregister_all(&mut self) {
        self.observers.clear();
    }

    pub fn len(&self) -> usize {
        self.observers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observers.is_empty()
    }

    pub fn notify_all(&self, event: &Event<'_>) {
        for (id, observer) in &self.observers {
            match catch_unwind(AssertUnwindSafe(|| observer.update(event))) {
                Ok(Ok(())) => {}
                Ok(Err(e)) => log::warn!("observer {id:?} failed: {e}"),
                Err(_) => log::warn!("observer {id:?} panicked; notification skipped"),
            }
        }
    }
}

/// A clock that increments a counter every `delay` and notifies its observers with the
/// new `COUNTER` value from a background thread. The first notification carries 0.
pub struct TimeCounter {
    delay: Duration,
    observable: Observable,
}

impl TimeCounter {
    pub fn new(delay: Duration) -> Self {
        TimeCounter {
            delay,
            observable: Observable::new(),
        }
    }

    pub fn observable(&mut self) -> &mut Observable {
        &mut self.observable
    }

    /// Starts ticking. The returned handle stops the clock when dropped.
    pub fn start(self) -> TimeCounterHandle {
        let stop = Arc::new(AtomicBool::new(false));
        let flag = Arc::clone(&stop);
        let TimeCounter { delay, observable } = self;
        let thread = std::thread::spawn(move || {
            let mut counter = 0u64;
            loop {
                std::thread::sleep(delay);
                if flag.load(Ordering::Acquire) {
                    break;
                }
                observable.notify_all(&Event::counter(counter));
                counter += 1;
            }
            counter
        });
        TimeCounterHandle {
            stop,
            thread: Some(thread),
        }
    }
}

pub struct TimeCounterHandle {
    stop: Arc<AtomicBool>,
    thread: Option<JoinHandle<u64>>,
}

impl TimeCounterHandle {
    /// Stops the clock and returns how many ticks were published.
    pub fn stop(mut self) -> u64 {
        self.halt()
    }

    fn halt(&mut self) -> u64 {
        self.stop.store(true, Ordering::Release);
        self.thread
            .take()
            .map(|t| t.join().unwrap_or(0))
            .unwrap_or(0)
    }
}

impl Drop for TimeCounterHandle {
    fn drop(&mut self) {
        self.halt();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Mutex;

    struct Recorder(Mutex<Vec<u64>>);

    impl Observer for Recorder {
        fn update(&self, event: &Event<'_>) -> Result<(), ObserverError> {
            self.0.lock().unwrap().push(event.require_evaluations()?);
            Ok(())
        }
    }

    #[test]
    fn no_observers_is_a_noop() {
        Observable::new().notify_all(&Event::default());
    }

    #[test]
    fn every_observer_receives_the_payload_in_order() {
        let order = Arc::new(Mutex::new(Vec::new()));
        let mut hub = Observable::new();
        for tag in 0..2u64 {
            let order = Arc::clone(&order);
            hub.register(Arc::new(move |e: &Event<'_>| {
                order.lock().unwrap().push((tag, e.evaluations.unwrap()));
            }));
        }
        hub.notify_all(&Event::progress(42, &[]));
        assert_eq!(*order.lock().unwrap(), vec![(0, 42), (1, 42)]);
    }

    #[test]
    fn deregistered_observer_is_not_invoked() {
        let rec = Arc::new(Recorder(Mutex::new(Vec::new())));
        let mut hub = Observable::new();
        let id = hub.register(rec.clone());
        assert!(hub.deregister(id));
        hub.notify_all(&Event::progress(1, &[]));
        assert!(rec.0.lock().unwrap().is_empty());
    }

    #[test]
    fn failing_observers_are_isolated() {
        let rec = Arc::new(Recorder(Mutex::new(Vec::new())));
        let mut hub = Observable::new();
        hub.register(Arc::new(|_: &Event<'_>| panic!("boom")));
        hub.register(rec.clone());
        // missing EVALUATIONS makes the recorder return an error
        hub.notify_all(&Event::counter(3));
        hub.notify_all(&Event::progress(7, &[]));
        assert_eq!(*rec.0.lock().unwrap(), vec![7]);
    }

    #[test]
    fn time_counter_publishes_increasing_counters() {
        let seen = Arc::new(Mutex::new(Vec::new()));
        let mut clock = TimeCounter::new(Duration::from_millis(2));
        let sink = Arc::clone(&seen);
        clock
            .observable()
            .register(Arc::new(move |e: &Event<'_>| sink.lock().unwrap().push(e.counter.unwrap())));
        let handle = clock.start();
        std::thread::sleep(Duration::from_millis(30));
        let ticks = handle.stop();
        let seen = seen.lock().unwrap();
        assert_eq!(seen.len() as u64, ticks);
        assert!(ticks >= 2);
        assert!(seen.iter().enumerate().all(|(i, &c)| c == i as u64));
    }
}
