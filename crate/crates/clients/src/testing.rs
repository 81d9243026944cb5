//! Test doubles for the transport and sleeper seams.

use std::collections::{HashMap, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use crate::transport::{HttpResponse, Sleeper, Transport, TransportError};

/// Serves canned responses per URL; a URL may be given a queue of responses
/// that are returned in order, the last one repeating.
#[derive(Default)]
pub struct FixtureTransport {
    routes: Mutex<HashMap<String, VecDeque<HttpResponse>>>,
    calls: AtomicUsize,
}

impl FixtureTransport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn route(self, url: impl Into<String>, status: u16, body: impl Into<String>) -> Self {
        self.routes
            .lock()
            .unwrap()
            .entry(url.into())
            .or_default()
            .push_back(HttpResponse {
                status,
                body: body.into(),
            });
        self
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }
}

impl Transport for FixtureTransport {
    fn get(&self, url: &str) -> Result<HttpResponse, TransportError> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        let mut routes = self.routes.lock().unwrap();
        let queue = routes
            .get_mut(url)
            .ok_or_else(|| TransportError(format!("no fixture for {url}")))?;
        let resp = if queue.len() > 1 {
            queue.pop_front().unwrap()
        } else {
            queue.front().cloned().unwrap()
        };
        Ok(resp)
    }
}

/// Panics on any request: proves a code path stays off the network.
pub struct FailOnCallTransport;

impl Transport for FailOnCallTransport {
    fn get(&self, url: &str) -> Result<HttpResponse, TransportError> {
        panic!("unexpected network access: GET {url}");
    }
}

/// Records requested sleeps without sleeping.
#[derive(Default)]
pub struct RecordingSleeper {
    sleeps: Mutex<Vec<Duration>>,
}

impl RecordingSleeper {
    pub fn sleeps(&self) -> Vec<Duration> {
        self.sleeps.lock().unwrap().clone()
    }
}

impl Sleeper for RecordingSleeper {
    fn sleep(&self, duration: Duration) {
        self.sleeps.lock().unwrap().push(duration);
    }
}
