// Pure state reducer. The view is a function of this state alone, and
// this state is a function of the received event stream plus local
// input actions, so replaying a recorded stream reproduces every view
// state exactly.

import { FEEDBACK_ANIMATIONS, isKnownMotion, isKnownSound } from './animations.js';
import type {
  ObjectId,
  PhaseId,
  SamRating,
  ServerEvent,
  SessionView,
} from './types.js';

export interface RobotPose {
  antennae: 'neutral' | 'wagging' | 'down';
  arm: 'rest' | 'waving';
  head: 'level' | 'nodding' | 'down';
}

export const NEUTRAL_POSE: RobotPose = { antennae: 'neutral', arm: 'rest', head: 'level' };

export interface ActiveAnimation {
  motion: string;
  sound: string;
  durationMs: number;
  valence: 'positive' | 'negative';
}

export interface UiState {
  sessionId: string | null;
  phase: PhaseId;
  word: string | null;
  progress: { n: number; max: number };
  pendingChoice: ObjectId | null;
  animation: ActiveAnimation | null;
  robot: RobotPose;
  terminated: boolean;
  converged: boolean | null;
  surveyOpen: boolean;
  surveySubmitted: boolean;
  connected: boolean;
  error: string | null;
  flagged: boolean;
  lastEventSeq: number;
  transcript: string[];
}

export const initialState: UiState = {
  sessionId: null,
  phase: 'idle',
  word: null,
  progress: { n: 0, max: 0 },
  pendingChoice: null,
  animation: null,
  robot: NEUTRAL_POSE,
  terminated: false,
  converged: null,
  surveyOpen: false,
  surveySubmitted: false,
  connected: false,
  error: null,
  flagged: false,
  lastEventSeq: 0,
  transcript: [],
};

export type Action =
  | { type: 'session_started'; view: SessionView }
  | { type: 'server_event'; seq: number; event: ServerEvent }
  | { type: 'choice_clicked'; object: ObjectId }
  | { type: 'choice_accepted' }
  | { type: 'choice_rejected'; resync: SessionView | null }
  | { type: 'animation_finished' }
  | { type: 'survey_submitted'; rating: SamRating }
  | { type: 'connection_changed'; connected: boolean }
  | { type: 'fatal_error'; message: string };

/** Object buttons are live only while the robot waits, nothing is
 * in flight, and no feedback animation is playing. */
export function canOffer(state: UiState): boolean {
  return (
    state.phase === 'awaiting_object' &&
    state.pendingChoice === null &&
    state.animation === null &&
    !state.terminated &&
    !state.flagged
  );
}

function poseFor(motion: string): RobotPose {
  switch (motion) {
    case 'wag_antennae':
      return { antennae: 'wagging', arm: 'rest', head: 'level' };
    case 'arm_wave':
      return { antennae: 'neutral', arm: 'waving', head: 'level' };
    case 'nod_head':
      return { antennae: 'neutral', arm: 'rest', head: 'nodding' };
    case 'look_down_lower_antennae':
      return { antennae: 'down', arm: 'rest', head: 'down' };
    default:
      return NEUTRAL_POSE;
  }
}

function applyServerEvent(state: UiState, seq: number, event: ServerEvent): UiState {
  if (seq <= state.lastEventSeq) {
    return state; // replayed duplicate after a reconnect
  }
  const next = { ...state, lastEventSeq: seq };
  switch (event.type) {
    case 'phase':
      return { ...next, phase: event.phase };
    case 'babble':
      return {
        ...next,
        word: event.word,
        transcript: [...state.transcript, `robot says "${event.word}"`],
      };
    case 'feedback': {
      if (!isKnownMotion(event.motion) || !isKnownSound(event.sound)) {
        return {
          ...next,
          error: `unrecognized feedback token "${event.motion}/${event.sound}"`,
          flagged: true,
          animation: null,
          robot: NEUTRAL_POSE,
        };
      }
      const descriptor = FEEDBACK_ANIMATIONS[event.motion];
      return {
        ...next,
        animation: {
          motion: event.motion,
          sound: event.sound,
          durationMs: event.duration_ms,
          valence: event.valence,
        },
        robot: poseFor(event.motion),
        transcript: [
          ...state.transcript,
          `robot reacts: ${descriptor.name} + ${event.sound}`,
        ],
      };
    }
    case 'progress':
      return { ...next, progress: { n: event.n, max: event.max } };
    case 'terminated':
      return {
        ...next,
        terminated: true,
        converged: event.converged,
        surveyOpen: !state.surveySubmitted,
        word: null,
      };
    default:
      return next;
  }
}

export function reduce(state: UiState, action: Action): UiState {
  switch (action.type) {
    case 'session_started':
      return {
        ...initialState,
        sessionId: action.view.id,
        phase: action.view.phase,
        word: action.view.word,
        progress: action.view.progress,
        terminated: action.view.terminated,
        converged: action.view.converged,
        connected: state.connected,
      };
    case 'server_event':
      return applyServerEvent(state, action.seq, action.event);
    case 'choice_clicked':
      if (!canOffer(state)) {
        return state; // double clicks and early clicks are dropped here
      }
      return { ...state, pendingChoice: action.object };
    case 'choice_accepted':
      return { ...state, pendingChoice: null };
    case 'choice_rejected': {
      const base = { ...state, pendingChoice: null };
      if (action.resync === null) {
        return base;
      }
      return {
        ...base,
        phase: action.resync.phase,
        word: action.resync.word,
        progress: action.resync.progress,
        terminated: action.resync.terminated,
        converged: action.resync.converged,
      };
    }
    case 'animation_finished':
      return { ...state, animation: null, robot: NEUTRAL_POSE };
    case 'survey_submitted':
      return { ...state, surveyOpen: false, surveySubmitted: true };
    case 'connection_changed':
      return { ...state, connected: action.connected };
    case 'fatal_error':
      return { ...state, error: action.message, flagged: true };
    default:
      return state;
  }
}

/** Replay a recorded stream through the reducer, collecting every
 * intermediate state (the replay-determinism check drives this). */
export function replay(
  events: { seq: number; event: ServerEvent }[],
  from: UiState = initialState,
): UiState[] {
  const states: UiState[] = [];
  let state = from;
  for (const { seq, event } of events) {
    state = reduce(state, { type: 'server_event', seq, event });
    // a finished animation is the only client-side timer; fold it in so
    // replays are timing-independent
    if (state.animation !== null) {
      states.push(state);
      state = reduce(state, { type: 'animation_finished' });
    }
    states.push(state);
  }
  return states;
}
