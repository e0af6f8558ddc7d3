import { afterEach, describe, expect, it, vi } from 'vitest';

import { ApiError, submitChoice, submitSurvey } from '../src/api.js';
import type { SamRating } from '../src/types.js';

afterEach(() => {
  vi.unstubAllGlobals();
});

function fakeServer(store: { survey?: SamRating }) {
  return vi.fn(async (url: string, init?: RequestInit) => {
    if (url.endsWith('/survey')) {
      const body = JSON.parse(String(init?.body)) as SamRating;
      for (const v of [body.valence, body.arousal, body.dominance]) {
        if (!(Number.isInteger(v) && v >= 1 && v <= 5)) {
          return new Response(
            JSON.stringify({
              error: { code: 'RangeViolation', message: `${v} outside 1..5` },
            }),
            { status: 422 },
          );
        }
      }
      if (store.survey) {
        return new Response(
          JSON.stringify({
            error: { code: 'DuplicateSurvey', message: 'already submitted' },
          }),
          { status: 409 },
        );
      }
      store.survey = body;
      return new Response(JSON.stringify({ ok: true }), { status: 200 });
    }
    return new Response(
      JSON.stringify({ error: { code: 'WrongPhase', message: 'not awaiting' } }),
      { status: 409 },
    );
  });
}

describe('survey submission', () => {
  it('round-trips every 1..5 combination exactly', async () => {
    for (let v = 1; v <= 5; v++) {
      for (let a = 1; a <= 5; a++) {
        for (let d = 1; d <= 5; d++) {
          const store: { survey?: SamRating } = {};
          vi.stubGlobal('fetch', fakeServer(store));
          const rating: SamRating = {
            valence: v,
            arousal: a,
            dominance: d,
            likert_answers: [['clarity', ((v + a + d) % 5) + 1]],
          };
          await submitSurvey('', 's1', rating);
          expect(store.survey).toEqual(rating);
        }
      }
    }
  });

  it('surfaces machine-readable error codes', async () => {
    const store: { survey?: SamRating } = {};
    vi.stubGlobal('fetch', fakeServer(store));
    const good: SamRating = { valence: 3, arousal: 3, dominance: 3, likert_answers: [] };
    await submitSurvey('', 's1', good);
    await expect(submitSurvey('', 's1', good)).rejects.toMatchObject({
      code: 'DuplicateSurvey',
      status: 409,
    });
    await expect(
      submitSurvey('', 's2-but-same-store', { ...good, valence: 6 }),
    ).rejects.toMatchObject({ code: 'RangeViolation' });
  });

  it('choice errors carry the WrongPhase code for the resync flow', async () => {
    vi.stubGlobal('fetch', fakeServer({}));
    try {
      await submitChoice('', 's1', 'cookie');
      expect.unreachable('should have thrown');
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).code).toBe('WrongPhase');
    }
  });
});
