// DOM rendering: a stylized robot (head, two antennae, two arms), the
// babbled word, three object buttons, progress, and the survey form.
// Everything on screen derives from the UiState passed in.

import { FEEDBACK_ANIMATIONS, isKnownMotion } from './animations.js';
import { canOffer, type UiState } from './reducer.js';
import { OBJECT_IDS, type ObjectId } from './types.js';

export interface ViewCallbacks {
  onChoice(object: ObjectId): void;
  onSurveySubmit(valence: number, arousal: number, dominance: number): void;
  onSurveySkip(): boolean; // returns true when the skip is confirmed
}

const OBJECT_LABELS: Record<ObjectId, string> = {
  cookie: '🍪 cookie',
  drink: '🥤 drink',
  teddy_bear: '🧸 teddy bear',
};

export function mount(root: HTMLElement, callbacks: ViewCallbacks): (s: UiState) => void {
  root.innerHTML = `
    <div class="stage">
      <div class="error-banner" id="error" hidden></div>
      <div class="robot" id="robot">
        <div class="antenna left" id="antenna-l"></div>
        <div class="antenna right" id="antenna-r"></div>
        <div class="head" id="head">
          <div class="eye left"></div><div class="eye right"></div>
        </div>
        <div class="arm left" id="arm-l"></div>
        <div class="arm right" id="arm-r"></div>
        <div class="body"></div>
      </div>
      <div class="speech" id="speech" hidden></div>
      <div class="progress" id="progress"></div>
      <div class="objects" id="objects"></div>
      <div class="status" id="status"></div>
      <form class="survey" id="survey" hidden>
        <h2>How was that for you?</h2>
        <div id="survey-scales"></div>
        <button type="submit">send</button>
        <button type="button" id="survey-skip">skip</button>
      </form>
      <div class="done" id="done" hidden></div>
    </div>`;

  const objectsEl = root.querySelector<HTMLElement>('#objects')!;
  for (const object of OBJECT_IDS) {
    const button = document.createElement('button');
    button.className = 'object-button';
    button.dataset.object = object;
    button.textContent = OBJECT_LABELS[object];
    button.addEventListener('click', () => callbacks.onChoice(object));
    objectsEl.appendChild(button);
  }

  const scales = root.querySelector<HTMLElement>('#survey-scales')!;
  const dimensions: [string, string, string][] = [
    ['valence', 'unhappy', 'happy'],
    ['arousal', 'calm', 'stressed'],
    ['dominance', 'not in control', 'in control'],
  ];
  for (const [dim, low, high] of dimensions) {
    const row = document.createElement('div');
    row.className = 'scale-row';
    row.innerHTML = `<span class="lo">${low}</span>` +
      [1, 2, 3, 4, 5]
        .map(
          (v) =>
            `<label><input type="radio" name="${dim}" value="${v}" ${v === 3 ? 'checked' : ''}>${v}</label>`,
        )
        .join('') +
      `<span class="hi">${high}</span>`;
    scales.appendChild(row);
  }
  const surveyEl = root.querySelector<HTMLFormElement>('#survey')!;
  surveyEl.addEventListener('submit', (e) => {
    e.preventDefault();
    const value = (name: string) =>
      Number(
        (surveyEl.querySelector(`input[name="${name}"]:checked`) as HTMLInputElement).value,
      );
    callbacks.onSurveySubmit(value('valence'), value('arousal'), value('dominance'));
  });
  root.querySelector<HTMLButtonElement>('#survey-skip')!.addEventListener('click', () => {
    if (callbacks.onSurveySkip()) {
      surveyEl.hidden = true;
    }
  });

  return (state: UiState) => render(root, state);
}

function setAnimation(el: HTMLElement, cssClass: string | null, durationMs: number): void {
  el.classList.remove('anim-oscillate', 'anim-drop');
  if (cssClass !== null) {
    el.style.setProperty('--anim-duration', `${durationMs}ms`);
    // retrigger css animation
    void el.offsetWidth;
    el.classList.add(cssClass);
  }
}

function render(root: HTMLElement, state: UiState): void {
  const q = <T extends HTMLElement>(sel: string) => root.querySelector<T>(sel)!;

  const error = q<HTMLElement>('#error');
  error.hidden = state.error === null;
  if (state.error !== null) {
    error.textContent = `something went wrong: ${state.error} (session flagged)`;
  }

  const speech = q<HTMLElement>('#speech');
  speech.hidden = state.word === null;
  speech.textContent = state.word === null ? '' : `"${state.word}"`;

  q<HTMLElement>('#progress').textContent =
    state.progress.max > 0 ? `trial ${state.progress.n} / ${state.progress.max}` : '';

  const robot = q<HTMLElement>('#robot');
  robot.dataset.antennae = state.robot.antennae;
  robot.dataset.arm = state.robot.arm;
  robot.dataset.head = state.robot.head;

  const parts: Record<string, HTMLElement[]> = {
    antennae: [q('#antenna-l'), q('#antenna-r')],
    arm: [q('#arm-l'), q('#arm-r')],
    head: [q('#head')],
  };
  for (const els of Object.values(parts)) {
    for (const el of els) setAnimation(el, null, 0);
  }
  if (state.animation !== null && isKnownMotion(state.animation.motion)) {
    const descriptor = FEEDBACK_ANIMATIONS[state.animation.motion];
    const cssClass = descriptor.motion === 'oscillate' ? 'anim-oscillate' : 'anim-drop';
    for (const el of parts[descriptor.part]) {
      setAnimation(el, cssClass, state.animation.durationMs);
    }
  }

  const offerable = canOffer(state);
  for (const button of root.querySelectorAll<HTMLButtonElement>('.object-button')) {
    button.disabled = !offerable;
  }

  const status = q<HTMLElement>('#status');
  if (state.terminated) {
    status.textContent = 'the session has ended, thank you!';
  } else if (state.animation !== null) {
    status.textContent = ''; // the robot's reaction speaks for itself
  } else if (offerable) {
    status.textContent = 'give the robot one of the objects';
  } else if (!state.connected) {
    status.textContent = 'reconnecting…';
  } else {
    status.textContent = '…';
  }

  q<HTMLElement>('#survey').hidden = !state.surveyOpen;
  const done = q<HTMLElement>('#done');
  done.hidden = !(state.terminated && !state.surveyOpen);
  if (!done.hidden) {
    done.textContent = state.surveySubmitted
      ? 'answers saved. you can close this page.'
      : 'you can close this page.';
  }
}
