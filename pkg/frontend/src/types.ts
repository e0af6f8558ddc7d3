// Wire types shared with the session service.

export type ObjectId = 'cookie' | 'drink' | 'teddy_bear';

export const OBJECT_IDS: ObjectId[] = ['cookie', 'drink', 'teddy_bear'];

export type MotionTokenId =
  | 'wag_antennae'
  | 'arm_wave'
  | 'nod_head'
  | 'look_down_lower_antennae';

export type SoundTokenId =
  | 'happy_beep_a'
  | 'happy_beep_b'
  | 'happy_beep_c'
  | 'sad_tone';

export type PhaseId =
  | 'idle'
  | 'need_arises'
  | 'babbled'
  | 'awaiting_object'
  | 'evaluated'
  | 'feedback_emitted'
  | 'updated'
  | 'terminated';

export interface PhaseEvent {
  type: 'phase';
  phase: PhaseId;
}

export interface BabbleEvent {
  type: 'babble';
  word: string;
}

export interface FeedbackEvent {
  type: 'feedback';
  valence: 'positive' | 'negative';
  motion: string; // validated against the token map at render time
  sound: string;
  duration_ms: number;
}

export interface ProgressEvent {
  type: 'progress';
  n: number;
  max: number;
}

export interface TerminatedEvent {
  type: 'terminated';
  converged: boolean;
}

export type ServerEvent =
  | PhaseEvent
  | BabbleEvent
  | FeedbackEvent
  | ProgressEvent
  | TerminatedEvent;

export interface SessionView {
  id: string;
  phase: PhaseId;
  word: string | null;
  progress: { n: number; max: number };
  terminated: boolean;
  converged: boolean | null;
  last_event: number;
  survey: SamRating | null;
}

export interface SamRating {
  valence: number;
  arousal: number;
  dominance: number;
  likert_answers: [string, number][];
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}
