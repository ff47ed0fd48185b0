//! Worker side of the distributed backend.
//!
//! A worker answers `Ping` with `Pong`, runs [`analyze_document`] for each
//! `TaskAssign` and replies with `TaskResult`. It keeps no state between
//! tasks: the configuration travels inside every task and is checked
//! against the digest the master computed.

use std::collections::HashMap;
use std::io;
use std::net::{Shutdown, SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use log::{debug, info, warn};
use thiserror::Error;

use super::protocol::{self, Message, PongPayload, TaskAssign, PROTOCOL_VERSION};
use super::{analyze_document, PipelineConfig};
use crate::corpus::Document;
use crate::formulas::EasyWordList;
use crate::lingproc::{LanguageProfile, StopWordList, StopWordOrigin};

#[derive(Debug, Error)]
pub enum WorkerError {
    #[error("cannot bind {address}: {source}")]
    BindFailure {
        address: String,
        #[source]
        source: io::Error,
    },
    #[error("accept failed: {0}")]
    Accept(#[source] io::Error),
}

#[derive(Debug, Clone, Default)]
pub struct WorkerOptions {
    /// Where to look for `<lang>.profile` files named by tasks.
    pub profile_dir: Option<PathBuf>,
    /// Fault injection: after this many completed tasks the worker drops
    /// every connection without answering and stops.
    pub fail_after_tasks: Option<usize>,
}

struct Shared {
    opts: WorkerOptions,
    addr: SocketAddr,
    stopping: AtomicBool,
    served: AtomicUsize,
    next_conn: AtomicUsize,
    connections: Mutex<HashMap<usize, TcpStream>>,
}

impl Shared {
    fn stop(&self, abrupt: bool) {
        if self.stopping.swap(true, Ordering::SeqCst) {
            return;
        }
        if abrupt {
            for (_, c) in self.connections.lock().expect("connection registry").drain() {
                let _ = c.shutdown(Shutdown::Both);
            }
        }
        // wake the accept loop
        let _ = TcpStream::connect(self.addr);
    }
}

/// Stops a running [`Worker`] from another thread.
#[derive(Clone)]
pub struct ShutdownHandle(Arc<Shared>);

impl ShutdownHandle {
    pub fn shutdown(&self) {
        self.0.stop(false);
    }

    /// Drop all live connections immediately, as a crash would.
    pub fn kill(&self) {
        self.0.stop(true);
    }
}

pub struct Worker {
    listener: TcpListener,
    shared: Arc<Shared>,
}

impl Worker {
    pub fn bind(address: impl ToSocketAddrs + std::fmt::Debug, opts: WorkerOptions) -> Result<Self, WorkerError> {
        let describe = format!("{address:?}");
        let listener = TcpListener::bind(&address).map_err(|source| WorkerError::BindFailure {
            address: describe.clone(),
            source,
        })?;
        let addr = listener.local_addr().map_err(|source| WorkerError::BindFailure {
            address: describe,
            source,
        })?;
        Ok(Self {
            listener,
            shared: Arc::new(Shared {
                opts,
                addr,
                stopping: AtomicBool::new(false),
                served: AtomicUsize::new(0),
                next_conn: AtomicUsize::new(0),
                connections: Mutex::new(HashMap::new()),
            }),
        })
    }

    pub fn local_addr(&self) -> SocketAddr {
        self.shared.addr
    }

    pub fn shutdown_handle(&self) -> ShutdownHandle {
        ShutdownHandle(Arc::clone(&self.shared))
    }

    /// Accept connections until a `Shutdown` message or a
    /// [`ShutdownHandle`] stops the worker. Each connection gets a thread.
    pub fn serve(self) -> Result<(), WorkerError> {
        info!("worker listening on {}", self.shared.addr);
        for stream in self.listener.incoming() {
            if self.shared.stopping.load(Ordering::SeqCst) {
                break;
            }
            let stream = match stream {
                Ok(s) => s,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
                Err(e) => return Err(WorkerError::Accept(e)),
            };
            let id = self.shared.next_conn.fetch_add(1, Ordering::SeqCst);
            if let Ok(clone) = stream.try_clone() {
                self.shared
                    .connections
                    .lock()
                    .expect("connection registry")
                    .insert(id, clone);
            }
            let shared = Arc::clone(&self.shared);
            thread::spawn(move || {
                handle_connection(stream, &shared);
                shared.connections.lock().expect("connection registry").remove(&id);
            });
        }
        info!("worker on {} stopped", self.shared.addr);
        Ok(())
    }
}

/// Bind and serve until shut down.
pub fn serve_worker(bind_address: &str, opts: WorkerOptions) -> Result<(), WorkerError> {
    Worker::bind(bind_address, opts)?.serve()
}

fn handle_connection(mut stream: TcpStream, shared: &Shared) {
    let _ = stream.set_nodelay(true);
    let peer = stream.peer_addr().map(|a| a.to_string()).unwrap_or_default();
    loop {
        let msg = match protocol::read_message(&mut stream) {
            Ok(m) => m,
            Err(e) if e.is_malformed() => {
                warn!("malformed frame from {peer}: {e}");
                let _ = protocol::write_message(&mut stream, &Message::error(e.to_string()));
                let _ = stream.shutdown(Shutdown::Both);
                return;
            }
            Err(e) => {
                debug!("connection from {peer} ended: {e}");
                return;
            }
        };
        let reply = match msg {
            Message::Ping => Message::Pong(PongPayload {
                protocol_version: PROTOCOL_VERSION,
            }),
            Message::TaskAssign(task) => {
                if let Some(limit) = shared.opts.fail_after_tasks {
                    if shared.served.load(Ordering::SeqCst) >= limit {
                        warn!("fault injection: worker {} going down", shared.addr);
                        let _ = stream.shutdown(Shutdown::Both);
                        shared.stop(true);
                        return;
                    }
                }
                let reply = match run_task(task, shared) {
                    Ok(result) => Message::TaskResult(result),
                    Err(message) => Message::error(message),
                };
                shared.served.fetch_add(1, Ordering::SeqCst);
                reply
            }
            Message::Shutdown => {
                shared.stop(false);
                return;
            }
            other => Message::error(format!("unexpected {:?} message", other.kind())),
        };
        if protocol::write_message(&mut stream, &reply).is_err() {
            return;
        }
    }
}

fn run_task(task: TaskAssign, shared: &Shared) -> Result<super::DocumentResult, String> {
    let cfg = config_from_task(&task, shared.opts.profile_dir.as_deref())?;
    let digest = cfg.digest();
    if digest != task.config_digest {
        return Err(format!(
            "config digest mismatch: master {}, worker {digest}",
            task.config_digest
        ));
    }
    let doc = Document::from_text(task.doc_id, task.text);
    Ok(analyze_document(&doc, &cfg))
}

/// Rebuild a [`PipelineConfig`] from the fields carried by a task.
pub fn config_from_task(task: &TaskAssign, profile_dir: Option<&std::path::Path>) -> Result<PipelineConfig, String> {
    let profile = LanguageProfile::resolve(&task.profile_id, profile_dir).map_err(|e| e.to_string())?;
    let stoplist = StopWordList::new(task.stoplist.iter().cloned(), StopWordOrigin::File);
    let easy = task.easy_words.as_ref().map(|w| EasyWordList::new(w.iter().cloned()));
    PipelineConfig::with_threshold(profile, stoplist, task.formulas.clone(), easy, task.hard_word_threshold)
        .map_err(|e| e.to_string())
}
