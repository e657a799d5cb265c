#!/usr/bin/env python3
"""Build character-trigram rank profiles for the built-in language detector.

Seed texts are short privacy-notice style passages per language; profiles are
the top trigrams by frequency (words padded with '_'). Output goes to
src/cppgen/data/language_profiles.json.
"""

import json
import re
import unicodedata
from collections import Counter
from pathlib import Path

PROFILE_SIZE = 300

SEEDS = {
    "en": """
        We collect information that you provide to us directly, for example when
        you create an account, fill in forms, upload content, or contact our
        support team. This information may include your name, email address,
        telephone number, postal address and payment details. We also receive
        technical data automatically when you use our services, such as your
        device identifiers, operating system, browser type and approximate
        location derived from your network. We use this information to operate,
        maintain and improve the services, to personalise your experience, to
        communicate with you about updates and offers, and to protect the
        security of our users. We do not sell your personal information. We may
        disclose information to trusted partners who process it on our behalf
        under strict confidentiality obligations, or when the law requires us to
        do so. You can review, correct or delete the personal data held about
        you at any time by visiting the settings page of your account. If you
        have questions about this notice, please write to our privacy team and
        we will answer as quickly as possible.
    """,
    "fr": """
        Nous recueillons les informations que vous nous fournissez directement,
        par exemple lorsque vous créez un compte, remplissez des formulaires,
        téléchargez du contenu ou contactez notre service d'assistance. Ces
        informations peuvent comprendre votre nom, votre adresse électronique,
        votre numéro de téléphone, votre adresse postale et vos données de
        paiement. Nous recevons également des données techniques lorsque vous
        utilisez nos services, telles que les identifiants de votre appareil,
        le système d'exploitation, le type de navigateur et la localisation
        approximative déduite de votre réseau. Nous utilisons ces informations
        pour exploiter, maintenir et améliorer les services, pour personnaliser
        votre expérience, pour communiquer avec vous et pour protéger la
        sécurité de nos utilisateurs. Nous ne vendons pas vos informations
        personnelles. Vous pouvez consulter, corriger ou supprimer à tout moment
        les données personnelles vous concernant depuis la page des paramètres
        de votre compte. Si vous avez des questions, veuillez écrire à notre
        équipe chargée de la protection de la vie privée.
    """,
    "de": """
        Wir erheben die Informationen, die Sie uns direkt zur Verfügung stellen,
        zum Beispiel wenn Sie ein Konto erstellen, Formulare ausfüllen, Inhalte
        hochladen oder unseren Kundendienst kontaktieren. Zu diesen Angaben
        können Ihr Name, Ihre E-Mail-Adresse, Ihre Telefonnummer, Ihre
        Postanschrift und Ihre Zahlungsdaten gehören. Außerdem erhalten wir
        automatisch technische Daten, wenn Sie unsere Dienste nutzen, etwa die
        Kennungen Ihres Geräts, das Betriebssystem, den Browsertyp und den
        ungefähren Standort, der aus Ihrem Netzwerk abgeleitet wird. Wir
        verwenden diese Informationen, um die Dienste zu betreiben, zu pflegen
        und zu verbessern, um mit Ihnen zu kommunizieren und um die Sicherheit
        unserer Nutzer zu schützen. Wir verkaufen Ihre personenbezogenen Daten
        nicht. Sie können die über Sie gespeicherten Daten jederzeit auf der
        Einstellungsseite Ihres Kontos einsehen, berichtigen oder löschen. Bei
        Fragen wenden Sie sich bitte an unser Datenschutzteam.
    """,
    "es": """
        Recopilamos la información que usted nos proporciona directamente, por
        ejemplo cuando crea una cuenta, rellena formularios, sube contenido o
        se pone en contacto con nuestro equipo de asistencia. Esta información
        puede incluir su nombre, su dirección de correo electrónico, su número
        de teléfono, su dirección postal y sus datos de pago. También recibimos
        datos técnicos automáticamente cuando utiliza nuestros servicios, como
        los identificadores de su dispositivo, el sistema operativo, el tipo de
        navegador y la ubicación aproximada derivada de su red. Utilizamos esta
        información para operar, mantener y mejorar los servicios, para
        personalizar su experiencia, para comunicarnos con usted y para
        proteger la seguridad de nuestros usuarios. No vendemos su información
        personal. Puede revisar, corregir o eliminar en cualquier momento los
        datos personales que conservamos sobre usted desde la página de ajustes
        de su cuenta. Si tiene preguntas, escriba a nuestro equipo de
        privacidad y le responderemos lo antes posible.
    """,
    "it": """
        Raccogliamo le informazioni che lei ci fornisce direttamente, per
        esempio quando crea un account, compila moduli, carica contenuti o
        contatta il nostro servizio di assistenza. Queste informazioni possono
        comprendere il suo nome, il suo indirizzo di posta elettronica, il suo
        numero di telefono, il suo indirizzo postale e i suoi dati di
        pagamento. Riceviamo inoltre dati tecnici automaticamente quando
        utilizza i nostri servizi, come gli identificativi del dispositivo, il
        sistema operativo, il tipo di browser e la posizione approssimativa
        ricavata dalla rete. Utilizziamo queste informazioni per gestire,
        mantenere e migliorare i servizi, per personalizzare la sua esperienza,
        per comunicare con lei e per proteggere la sicurezza dei nostri utenti.
        Non vendiamo le sue informazioni personali. Può consultare, correggere
        o cancellare in qualsiasi momento i dati personali che la riguardano
        dalla pagina delle impostazioni del suo account. Per qualsiasi domanda
        scriva al nostro gruppo per la tutela della riservatezza.
    """,
    "pt": """
        Recolhemos as informações que você nos fornece diretamente, por exemplo
        quando cria uma conta, preenche formulários, carrega conteúdos ou
        contacta a nossa equipa de apoio. Estas informações podem incluir o seu
        nome, o seu endereço de correio eletrónico, o seu número de telefone, a
        sua morada postal e os seus dados de pagamento. Também recebemos dados
        técnicos automaticamente quando utiliza os nossos serviços, como os
        identificadores do seu dispositivo, o sistema operativo, o tipo de
        navegador e a localização aproximada derivada da sua rede. Utilizamos
        estas informações para operar, manter e melhorar os serviços, para
        personalizar a sua experiência, para comunicar consigo e para proteger
        a segurança dos nossos utilizadores. Não vendemos as suas informações
        pessoais. Pode rever, corrigir ou eliminar a qualquer momento os dados
        pessoais que guardamos sobre si na página de definições da sua conta.
        Se tiver perguntas, escreva à nossa equipa de privacidade.
    """,
    "nl": """
        Wij verzamelen de informatie die u rechtstreeks aan ons verstrekt,
        bijvoorbeeld wanneer u een account aanmaakt, formulieren invult,
        inhoud uploadt of contact opneemt met onze klantenservice. Deze
        gegevens kunnen uw naam, uw e-mailadres, uw telefoonnummer, uw
        postadres en uw betaalgegevens omvatten. Daarnaast ontvangen wij
        automatisch technische gegevens wanneer u onze diensten gebruikt,
        zoals de kenmerken van uw apparaat, het besturingssysteem, het type
        browser en de geschatte locatie die uit uw netwerk wordt afgeleid.
        Wij gebruiken deze informatie om de diensten te beheren, te
        onderhouden en te verbeteren, om met u te communiceren en om de
        veiligheid van onze gebruikers te beschermen. Wij verkopen uw
        persoonsgegevens niet. U kunt de over u bewaarde gegevens op elk
        moment inzien, corrigeren of verwijderen via de instellingenpagina
        van uw account. Heeft u vragen, schrijf dan aan ons privacyteam.
    """,
}


def trigrams(text: str) -> Counter:
    text = unicodedata.normalize("NFC", text.lower())
    counts: Counter = Counter()
    for word in re.findall(r"[^\W\d_]+", text, flags=re.UNICODE):
        padded = f"_{word}_"
        for i in range(len(padded) - 2):
            counts[padded[i:i + 3]] += 1
    return counts


def main():
    out = Path(__file__).resolve().parent.parent / "src" / "cppgen" / "data" / "language_profiles.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    profiles = {}
    for lang, seed in SEEDS.items():
        counts = trigrams(seed)
        ranked = [g for g, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))]
        profiles[lang] = ranked[:PROFILE_SIZE]
    out.write_text(json.dumps(profiles, ensure_ascii=False, indent=1), encoding="utf-8")
    print(f"wrote {len(profiles)} profiles -> {out}")


if __name__ == "__main__":
    main()
