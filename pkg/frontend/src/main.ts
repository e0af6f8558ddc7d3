// Wiring: one store (reducer + render), the event stream, and the
// choice / survey flows against the session service.

import { SOUND_CUES, isKnownSound } from './animations.js';
import {
  ApiError,
  createSession,
  getSession,
  openEventStream,
  submitChoice,
  submitSurvey,
} from './api.js';
import { playCue } from './audio.js';
import { initialState, reduce, type Action, type UiState } from './reducer.js';
import type { ObjectId } from './types.js';
import { mount } from './view.js';

const BASE = '';

let state: UiState = initialState;
let render: (s: UiState) => void = () => {};
let animationTimer: ReturnType<typeof setTimeout> | null = null;

function dispatch(action: Action): void {
  const before = state;
  state = reduce(state, action);
  if (state !== before) {
    render(state);
  }
  if (
    action.type === 'server_event' &&
    action.event.type === 'feedback' &&
    state.animation !== null
  ) {
    const { sound, durationMs } = state.animation;
    if (isKnownSound(sound)) {
      playCue(SOUND_CUES[sound], durationMs);
    }
    if (animationTimer !== null) clearTimeout(animationTimer);
    animationTimer = setTimeout(() => dispatch({ type: 'animation_finished' }), durationMs);
  }
}

async function offerObject(object: ObjectId): Promise<void> {
  dispatch({ type: 'choice_clicked', object });
  if (state.pendingChoice !== object || state.sessionId === null) {
    return; // reducer dropped it (double click, wrong phase, animation)
  }
  try {
    await submitChoice(BASE, state.sessionId, object);
    dispatch({ type: 'choice_accepted' });
  } catch (err) {
    if (err instanceof ApiError && err.code === 'WrongPhase') {
      const view = await getSession(BASE, state.sessionId);
      dispatch({ type: 'choice_rejected', resync: view });
    } else if (err instanceof ApiError) {
      dispatch({ type: 'fatal_error', message: `${err.code}: ${err.message}` });
    } else {
      dispatch({ type: 'choice_rejected', resync: null });
      if (window.confirm('network hiccup while handing the object. try again?')) {
        void offerObject(object);
      }
    }
  }
}

async function sendSurvey(valence: number, arousal: number, dominance: number): Promise<void> {
  if (state.sessionId === null || state.surveySubmitted) return;
  try {
    await submitSurvey(BASE, state.sessionId, {
      valence,
      arousal,
      dominance,
      likert_answers: [],
    });
    dispatch({
      type: 'survey_submitted',
      rating: { valence, arousal, dominance, likert_answers: [] },
    });
  } catch (err) {
    if (err instanceof ApiError && err.code === 'DuplicateSurvey') {
      dispatch({
        type: 'survey_submitted',
        rating: { valence, arousal, dominance, likert_answers: [] },
      });
    } else {
      window.alert('could not save the answers, please try once more');
    }
  }
}

async function start(): Promise<void> {
  const root = document.getElementById('app');
  if (root === null) throw new Error('missing #app element');
  render = mount(root, {
    onChoice: (object) => void offerObject(object),
    onSurveySubmit: (v, a, d) => void sendSurvey(v, a, d),
    onSurveySkip: () =>
      window.confirm('skip the questions? your session is saved either way.'),
  });
  render(state);

  const params = new URLSearchParams(window.location.search);
  const existing = params.get('session');
  const view = existing ? await getSession(BASE, existing) : await createSession(BASE);
  if (!existing) {
    params.set('session', view.id);
    history.replaceState(null, '', `?${params}`);
  }
  dispatch({ type: 'session_started', view });
  openEventStream(
    BASE,
    view.id,
    0,
    (seq, event) => dispatch({ type: 'server_event', seq, event }),
    (connected) => dispatch({ type: 'connection_changed', connected }),
  );
}

void start();
