//! Framed master/worker wire protocol.
//!
//! ```text
//! +--------+---------+------+----------------+------------------+
//! | "RDRA" | version | type | payload length | UTF-8 JSON       |
//! | 4 B    | 1 B     | 1 B  | 4 B big-endian | `length` bytes   |
//! +--------+---------+------+----------------+------------------+
//! ```
//!
//! Message types: `0x01` Ping, `0x02` Pong, `0x03` TaskAssign,
//! `0x04` TaskResult, `0x05` Error, `0x06` Shutdown. Payloads longer than
//! [`MAX_PAYLOAD`] are refused before being read.

use std::io::{self, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::DocumentResult;
use crate::formulas::FormulaId;

pub const MAGIC: [u8; 4] = *b"RDRA";
pub const PROTOCOL_VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 10;
/// 64 MiB.
pub const MAX_PAYLOAD: u32 = 64 * 1024 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum MessageType {
    Ping = 0x01,
    Pong = 0x02,
    TaskAssign = 0x03,
    TaskResult = 0x04,
    Error = 0x05,
    Shutdown = 0x06,
}

impl MessageType {
    pub fn from_byte(b: u8) -> Option<Self> {
        Some(match b {
            0x01 => MessageType::Ping,
            0x02 => MessageType::Pong,
            0x03 => MessageType::TaskAssign,
            0x04 => MessageType::TaskResult,
            0x05 => MessageType::Error,
            0x06 => MessageType::Shutdown,
            _ => return None,
        })
    }
}

#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("connection closed by peer")]
    ConnectionClosed,
    #[error("bad magic bytes {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("unsupported protocol version {0}")]
    UnsupportedVersion(u8),
    #[error("unknown message type 0x{0:02x}")]
    UnknownMessageType(u8),
    #[error("frame payload of {0} bytes exceeds the {MAX_PAYLOAD} byte limit")]
    FrameTooLarge(u64),
    #[error("invalid payload: {0}")]
    Json(#[from] serde_json::Error),
}

impl ProtocolError {
    /// Errors caused by the peer sending garbage, as opposed to the
    /// connection going away.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            ProtocolError::BadMagic(_)
                | ProtocolError::UnsupportedVersion(_)
                | ProtocolError::UnknownMessageType(_)
                | ProtocolError::FrameTooLarge(_)
                | ProtocolError::Json(_)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PongPayload {
    pub protocol_version: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorPayload {
    pub message: String,
}

/// One document to analyze, with the whole configuration inline so that
/// workers keep no state between tasks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskAssign {
    pub doc_id: String,
    pub text: String,
    pub config_digest: String,
    pub profile_id: String,
    pub stoplist: Vec<String>,
    pub formulas: Vec<FormulaId>,
    pub hard_word_threshold: usize,
    /// Easy-word list for Dale-Chall, when configured.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub easy_words: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Message {
    Ping,
    Pong(PongPayload),
    TaskAssign(TaskAssign),
    TaskResult(DocumentResult),
    Error(ErrorPayload),
    Shutdown,
}

#[derive(Serialize, Deserialize)]
struct Empty {}

impl Message {
    pub fn kind(&self) -> MessageType {
        match self {
            Message::Ping => MessageType::Ping,
            Message::Pong(_) => MessageType::Pong,
            Message::TaskAssign(_) => MessageType::TaskAssign,
            Message::TaskResult(_) => MessageType::TaskResult,
            Message::Error(_) => MessageType::Error,
            Message::Shutdown => MessageType::Shutdown,
        }
    }

    pub fn error(message: impl Into<String>) -> Self {
        Message::Error(ErrorPayload {
            message: message.into(),
        })
    }

    fn payload(&self) -> Result<Vec<u8>, serde_json::Error> {
        match self {
            Message::Ping | Message::Shutdown => serde_json::to_vec(&Empty {}),
            Message::Pong(p) => serde_json::to_vec(p),
            Message::TaskAssign(t) => serde_json::to_vec(t),
            Message::TaskResult(r) => serde_json::to_vec(r),
            Message::Error(e) => serde_json::to_vec(e),
        }
    }

    fn from_payload(kind: MessageType, payload: &[u8]) -> Result<Self, serde_json::Error> {
        Ok(match kind {
            MessageType::Ping => {
                serde_json::from_slice::<Empty>(payload)?;
                Message::Ping
            }
            MessageType::Shutdown => {
                serde_json::from_slice::<Empty>(payload)?;
                Message::Shutdown
            }
            MessageType::Pong => Message::Pong(serde_json::from_slice(payload)?),
            MessageType::TaskAssign => Message::TaskAssign(serde_json::from_slice(payload)?),
            MessageType::TaskResult => Message::TaskResult(serde_json::from_slice(payload)?),
            MessageType::Error => Message::Error(serde_json::from_slice(payload)?),
        })
    }
}

/// Header plus payload as raw bytes.
pub fn encode_frame(kind: MessageType, payload: &[u8]) -> Result<Vec<u8>, ProtocolError> {
    if payload.len() as u64 > MAX_PAYLOAD as u64 {
        return Err(ProtocolError::FrameTooLarge(payload.len() as u64));
    }
    let mut buf = Vec::with_capacity(HEADER_LEN + payload.len());
    buf.extend_from_slice(&MAGIC);
    buf.push(PROTOCOL_VERSION);
    buf.push(kind as u8);
    buf.extend_from_slice(&(payload.len() as u32).to_be_bytes());
    buf.extend_from_slice(payload);
    Ok(buf)
}

pub fn encode(msg: &Message) -> Result<Vec<u8>, ProtocolError> {
    encode_frame(msg.kind(), &msg.payload()?)
}

pub fn write_message<W: Write>(w: &mut W, msg: &Message) -> Result<(), ProtocolError> {
    w.write_all(&encode(msg)?)?;
    w.flush()?;
    Ok(())
}

/// Read one raw frame. A clean EOF before the first header byte is
/// reported as [`ProtocolError::ConnectionClosed`].
pub fn read_frame<R: Read>(r: &mut R) -> Result<(MessageType, Vec<u8>), ProtocolError> {
    let mut header = [0u8; HEADER_LEN];
    let mut filled = 0;
    while filled < HEADER_LEN {
        match r.read(&mut header[filled..]) {
            Ok(0) if filled == 0 => return Err(ProtocolError::ConnectionClosed),
            Ok(0) => return Err(io::Error::from(io::ErrorKind::UnexpectedEof).into()),
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        }
    }
    let magic = [header[0], header[1], header[2], header[3]];
    if magic != MAGIC {
        return Err(ProtocolError::BadMagic(magic));
    }
    if header[4] != PROTOCOL_VERSION {
        return Err(ProtocolError::UnsupportedVersion(header[4]));
    }
    let kind = MessageType::from_byte(header[5]).ok_or(ProtocolError::UnknownMessageType(header[5]))?;
    let len = u32::from_be_bytes([header[6], header[7], header[8], header[9]]);
    if len > MAX_PAYLOAD {
        return Err(ProtocolError::FrameTooLarge(len as u64));
    }
    let mut payload = vec![0u8; len as usize];
    r.read_exact(&mut payload)?;
    Ok((kind, payload))
}

pub fn read_message<R: Read>(r: &mut R) -> Result<Message, ProtocolError> {
    let (kind, payload) = read_frame(r)?;
    Ok(Message::from_payload(kind, &payload)?)
}
